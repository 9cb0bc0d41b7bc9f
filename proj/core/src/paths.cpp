#include "gmt/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "gmt/errors.hpp"
#include "gmt/measure.hpp"
#include "paths_detail.hpp"

namespace gmt {

double GridPath::ratio(const Grid& g) const {
    if (z == w) return 1.0;
    const auto a = g.coords(z), b = g.coords(w);
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return length / (std::hypot(dx, dy) * g.spacing());
}

namespace detail {

PathSearch::PathSearch(const Grid& g)
    : grid_(g), cost_(std::size_t(g.size()), std::numeric_limits<double>::infinity()), from_(std::size_t(g.size()), -1) {}

void PathSearch::reset() {
    for (Index i : touched_) {
        cost_[std::size_t(i)] = std::numeric_limits<double>::infinity();
        from_[std::size_t(i)] = -1;
    }
    touched_.clear();
}

std::optional<std::vector<Index>> PathSearch::run(Index z, Index w, const std::function<bool(Index)>& allowed,
                                                  double* length_cells) {
    reset();
    if (z == w) {
        if (length_cells) *length_cells = 0.0;
        return std::vector<Index>{z};
    }
    const Coord target = grid_.coords(w);
    auto heuristic = [&](Index i) {
        const Coord c = grid_.coords(i);
        const double dx = std::abs(c[0] - target[0]), dy = std::abs(c[1] - target[1]);
        return std::max(dx, dy) + (std::sqrt(2.0) - 1.0) * std::min(dx, dy);
    };
    using Item = std::pair<double, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    cost_[std::size_t(z)] = 0.0;
    touched_.push_back(z);
    open.push({heuristic(z), z});
    while (!open.empty()) {
        const auto [f, p] = open.top();
        open.pop();
        const double gp = cost_[std::size_t(p)];
        if (f > gp + heuristic(p) + 1e-12) continue;
        if (p == w) break;
        const Coord c = grid_.coords(p);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (!dx && !dy) continue;
                const Coord n{c[0] + dx, c[1] + dy, 0};
                if (!grid_.inside(n)) continue;
                const Index q = grid_.index(n);
                if (q != w && !allowed(q)) continue;
                const double step = (dx && dy) ? std::sqrt(2.0) : 1.0;
                const double gq = gp + step;
                if (gq < cost_[std::size_t(q)] - 1e-12) {
                    if (std::isinf(cost_[std::size_t(q)])) touched_.push_back(q);
                    cost_[std::size_t(q)] = gq;
                    from_[std::size_t(q)] = p;
                    open.push({gq + heuristic(q), q});
                }
            }
    }
    if (std::isinf(cost_[std::size_t(w)])) return std::nullopt;
    std::vector<Index> path;
    for (Index p = w; p != -1; p = from_[std::size_t(p)]) path.push_back(p);
    std::reverse(path.begin(), path.end());
    if (length_cells) *length_cells = cost_[std::size_t(w)];
    return path;
}

}  // namespace detail

GridPath quasiconvex_path(const CellSet& allowed, Index z, Index w) {
    const Grid& g = allowed.grid();
    if (g.dim != 2) throw InvalidInput("quasiconvex_path: planar grids only");
    if (!allowed.test(z) || !allowed.test(w)) throw Unreachable("quasiconvex_path: endpoint outside the component");
    detail::PathSearch search(g);
    double len = 0.0;
    auto path = search.run(z, w, [&](Index i) { return allowed.test(i); }, &len);
    if (!path) throw Unreachable("quasiconvex_path: endpoints lie in different components");
    GridPath out;
    out.cells = std::move(*path);
    out.z = z;
    out.w = w;
    out.length = len * g.spacing();
    return out;
}

GridPath interior_path(const CellSet& component, Index z, Index w, double epsilon) {
    const Grid& g = component.grid();
    if (!(epsilon >= 2.0 * g.spacing())) throw ScaleError("interior_path: epsilon below 2h");
    const CellSet inner = interior(component);
    const CellSet closed = closure(component);
    if (!closed.test(z) || !closed.test(w)) throw Unreachable("interior_path: endpoint outside the component closure");

    detail::PathSearch search(g);
    double len = 0.0;
    auto path = search.run(z, w, [&](Index i) { return inner.test(i); }, &len);
    GridPath reference;
    bool have_reference = true;
    try {
        reference = quasiconvex_path(closed, z, w);
    } catch (const Unreachable&) {
        have_reference = false;
    }
    if (!path) {
        if (!have_reference) throw Unreachable("interior_path: endpoints lie in different components");
        reference.resolution_limited = true;
        return reference;
    }
    GridPath out;
    out.cells = std::move(*path);
    out.z = z;
    out.w = w;
    out.length = len * g.spacing();
    out.interior_only = true;
    if (have_reference && out.length > reference.length + epsilon) out.resolution_limited = true;
    return out;
}

}  // namespace gmt
