#include "gmt/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmt/distance.hpp"
#include "gmt/errors.hpp"
#include "gmt/parallel.hpp"

namespace gmt {
namespace {

template <class Visit>
void faces_in_rows(const Grid& g, Index row0, Index row1, Visit&& visit) {
    const Index nx = g.cells[0];
    for (Index row = row0; row < row1; ++row) {
        const int y = int(row % g.cells[1]);
        const int z = int(row / g.cells[1]);
        for (int x = 0; x < nx; ++x) {
            const Index p = g.index(x, y, z);
            if (x + 1 < nx) visit(p, p + 1);
            if (y + 1 < g.cells[1]) visit(p, p + g.stride(1));
            if (g.dim == 3 && z + 1 < g.cells[2]) visit(p, p + g.stride(2));
        }
    }
}

double tv_impl(const GridFunction& u, const CellSet* region) {
    const Grid& g = u.grid();
    const Index rows = Index(g.cells[1]) * g.cells[2];
    const double w = g.face_area();
    const auto& v = u.values();
    return parallel_sum(rows, 64, [&](Index r0, Index r1) {
        double acc = 0.0;
        faces_in_rows(g, r0, r1, [&](Index p, Index q) {
            if (region && !(region->test(p) && region->test(q))) return;
            acc += std::abs(v[std::size_t(p)] - v[std::size_t(q)]);
        });
        return acc * w;
    });
}

Variation tv_full(const GridFunction& u, const CellSet* region) {
    const Grid& g = u.grid();
    const double w = g.face_area();
    const auto& v = u.values();
    std::vector<Face> faces;
    faces_in_rows(g, 0, Index(g.cells[1]) * g.cells[2], [&](Index p, Index q) {
        if (region && !(region->test(p) && region->test(q))) return;
        const double d = std::abs(v[std::size_t(p)] - v[std::size_t(q)]);
        if (d > 0.0) faces.push_back({p, q, d * w});
    });
    Variation out;
    out.measure = EdgeMeasure(g, std::move(faces));
    out.value = out.measure.total();
    return out;
}

}  // namespace

Variation total_variation(const GridFunction& u) { return tv_full(u, nullptr); }

Variation total_variation(const GridFunction& u, const CellSet& region) {
    require_same(u.grid(), region.grid(), "total_variation");
    return tv_full(u, &region);
}

double total_variation_value(const GridFunction& u) { return tv_impl(u, nullptr); }

double total_variation_value(const GridFunction& u, const CellSet& region) {
    require_same(u.grid(), region.grid(), "total_variation");
    return tv_impl(u, &region);
}

double perimeter(const CellSet& e) { return total_variation_value(GridFunction::indicator(e)); }

double perimeter(const CellSet& e, const CellSet& region) {
    require_same(e.grid(), region.grid(), "perimeter");
    return total_variation_value(GridFunction::indicator(e), region);
}

CellSet closure(const CellSet& s) {
    const Grid& g = s.grid();
    CellSet out = s;
    for (Index i = 0; i < g.size(); ++i) {
        if (!s.test(i)) continue;
        for_each_full_neighbor(g, i, [&](Index n) { out.set(n); });
    }
    return out;
}

CellSet interior(const CellSet& s) {
    const Grid& g = s.grid();
    CellSet out(g);
    for (Index i = 0; i < g.size(); ++i) {
        if (!s.test(i)) continue;
        bool all = true;
        for_each_full_neighbor(
            g, i, [&](Index n) { all = all && s.test(n); }, [&] { all = false; });
        out.set(i, all);
    }
    return out;
}

CellSet inner_boundary(const CellSet& s) { return s - interior(s); }

CellSet outer_boundary(const CellSet& s) { return closure(s) - s; }

std::vector<double> density_at(const CellSet& e, Index x, const std::vector<double>& radii) {
    const Grid& g = e.grid();
    if (x < 0 || x >= g.size()) throw InvalidInput("density_at: cell index outside the grid");
    const double h = g.spacing();
    for (double r : radii)
        if (!(r >= 2.0 * h)) throw ScaleError("density_at: radius below 2h");
    const BallCounter counter(e);
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const auto c = counter.count(x, r / h);
        out.push_back(double(c.in_set) / double(c.in_grid));
    }
    return out;
}

DensityBounds density_bounds(const std::vector<double>& densities) {
    if (densities.empty()) throw InvalidInput("density_bounds: no radii");
    const auto [lo, hi] = std::minmax_element(densities.begin(), densities.end());
    return {*hi, *lo};
}

DensityScan measure_density_scan(const CellSet& omega, Index samples, const std::vector<double>& radii) {
    if (samples < 1) throw InvalidInput("measure_density_scan: samples must be at least 1");
    if (radii.empty()) throw InvalidInput("measure_density_scan: no radii");
    if (omega.empty()) throw InvalidInput("measure_density_scan: empty domain");
    const Grid& g = omega.grid();
    const double h = g.spacing();
    for (double r : radii)
        if (!(r >= 4.0 * h)) throw ScaleError("measure_density_scan: radius below 4h");

    const std::vector<Index> boundary = inner_boundary(omega).members();
    const Index stride = std::max<Index>(1, (Index(boundary.size()) + samples - 1) / samples);
    std::vector<Index> points;
    for (std::size_t k = 0; k < boundary.size(); k += std::size_t(stride)) points.push_back(boundary[k]);

    const BallCounter counter(omega);
    const double vol = g.cell_volume();
    struct Best {
        double value = std::numeric_limits<double>::infinity();
        Index point = -1;
        double radius = 0.0;
    };
    std::vector<Best> best(points.size());
    parallel_blocks(Index(points.size()), 16, [&](Index b0, Index b1) {
        for (Index k = b0; k < b1; ++k) {
            Best& b = best[std::size_t(k)];
            for (double r : radii) {
                const auto c = counter.count(points[std::size_t(k)], r / h);
                const double ratio = double(c.in_set) * vol / std::pow(r, g.dim);
                if (ratio < b.value) b = {ratio, points[std::size_t(k)], r};
            }
        }
    });
    DensityScan out;
    out.c_hat = std::numeric_limits<double>::infinity();
    for (const Best& b : best)
        if (b.value < out.c_hat) {
            out.c_hat = b.value;
            out.worst_point = b.point;
            out.worst_radius = b.radius;
        }
    out.sampled = Index(points.size());
    return out;
}

double poincare_ratio(const GridFunction& u, const CellSet& region) {
    require_same(u.grid(), region.grid(), "poincare_ratio");
    const Grid& g = u.grid();
    const auto cells = region.members();
    if (cells.empty()) throw InvalidInput("poincare_ratio: empty region");
    const double tv = total_variation_value(u, region);
    if (!(tv > 0.0)) throw UndefinedRatio("poincare_ratio: total variation is zero");

    double mean = 0.0;
    Coord lo{g.cells[0], g.cells[1], g.cells[2]}, hi{-1, -1, -1};
    for (Index i : cells) {
        mean += u[i];
        const Coord c = g.coords(i);
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], c[a]);
            hi[a] = std::max(hi[a], c[a]);
        }
    }
    mean /= double(cells.size());
    double dev = 0.0;
    for (Index i : cells) dev += std::abs(u[i] - mean);
    dev *= g.cell_volume();
    int extent = 0;
    for (int a = 0; a < g.dim; ++a) extent = std::max(extent, hi[a] - lo[a] + 1);
    return dev / (extent * g.spacing() * tv);
}

}  // namespace gmt
