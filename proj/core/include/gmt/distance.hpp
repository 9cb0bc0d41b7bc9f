#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

// Squared Euclidean distance (in cell units) from each cell center to the
// nearest center of a `sites` cell. With frame_is_site, the virtual cells
// just beyond the frame also count as sites. Cells with no reachable site get
// a value larger than any in-grid distance.
std::vector<double> squared_distance_transform(const CellSet& sites, bool frame_is_site);

// Counts cells of a set inside discrete Euclidean balls (cell centers within
// the radius of the center cell) using per-row prefix sums.
class BallCounter {
public:
    explicit BallCounter(const CellSet& set);

    struct Count {
        std::int64_t in_set = 0;
        std::int64_t in_grid = 0;
    };
    // radius_cells: radius in units of the grid spacing.
    Count count(Index center, double radius_cells) const;

private:
    Grid grid_;
    std::vector<std::int32_t> prefix_;  // per row: cells_x + 1 entries
};

}  // namespace gmt
