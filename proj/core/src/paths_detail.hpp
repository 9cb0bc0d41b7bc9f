#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt::detail {

// A* over 8-connected cells with reusable per-grid buffers.
class PathSearch {
public:
    explicit PathSearch(const Grid& g);
    // Cells of a shortest path from z to w (both included). The endpoint w
    // is always enterable; z is the start regardless of `allowed`.
    std::optional<std::vector<Index>> run(Index z, Index w, const std::function<bool(Index)>& allowed,
                                          double* length_cells = nullptr);

private:
    void reset();

    Grid grid_;
    std::vector<double> cost_;
    std::vector<Index> from_;
    std::vector<Index> touched_;
};

}  // namespace gmt::detail
