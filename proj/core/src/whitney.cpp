#include "gmt/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmt/distance.hpp"
#include "gmt/errors.hpp"
#include "gmt/measure.hpp"
#include "gmt/parallel.hpp"

namespace gmt {
namespace {

// Min-pyramid over dyadic blocks anchored at cell 0. Entry -1 marks a block
// that is not entirely inside the open set (or sticks out of the grid).
class Pyramid {
public:
    Pyramid(const Grid& g, std::vector<std::int64_t> base) : grid_(g) {
        Coord dims = g.cells;
        levels_.push_back(std::move(base));
        dims_.push_back(dims);
        int max_axis = std::max({g.cells[0], g.cells[1], g.dim == 3 ? g.cells[2] : 1});
        while ((1 << (int(levels_.size()) - 1)) < max_axis) {
            const Coord prev = dims_.back();
            Coord next{};
            for (int a = 0; a < 3; ++a) next[a] = (a < g.dim) ? (prev[a] + 1) / 2 : 1;
            std::vector<std::int64_t> lvl(std::size_t(Index(next[0]) * next[1] * next[2]), 0);
            const auto& src = levels_.back();
            for (int z = 0; z < next[2]; ++z)
                for (int y = 0; y < next[1]; ++y)
                    for (int x = 0; x < next[0]; ++x) {
                        std::int64_t m = std::numeric_limits<std::int64_t>::max();
                        const int zr = g.dim == 3 ? 2 : 1;
                        for (int dz = 0; dz < zr; ++dz)
                            for (int dy = 0; dy < 2; ++dy)
                                for (int dx = 0; dx < 2; ++dx) {
                                    const int cx = 2 * x + dx, cy = 2 * y + dy, cz = (g.dim == 3 ? 2 * z + dz : 0);
                                    std::int64_t v = -1;
                                    if (cx < prev[0] && cy < prev[1] && cz < prev[2])
                                        v = src[std::size_t(cx + Index(prev[0]) * (cy + Index(prev[1]) * cz))];
                                    m = std::min(m, v);
                                }
                        lvl[std::size_t(x + Index(next[0]) * (y + Index(next[1]) * z))] = m;
                    }
            levels_.push_back(std::move(lvl));
            dims_.push_back(next);
        }
    }

    int top() const { return int(levels_.size()) - 1; }
    bool valid(int j, const Coord& b) const {
        for (int a = 0; a < 3; ++a)
            if (b[a] < 0 || b[a] >= dims_[std::size_t(j)][a]) return false;
        return true;
    }
    std::int64_t at(int j, const Coord& b) const {
        const Coord& d = dims_[std::size_t(j)];
        return levels_[std::size_t(j)][std::size_t(b[0] + Index(d[0]) * (b[1] + Index(d[1]) * b[2]))];
    }

private:
    Grid grid_;
    std::vector<std::vector<std::int64_t>> levels_;
    std::vector<Coord> dims_;
};

void subdivide(const Grid& g, const Pyramid& pyr, int j, const Coord& b, WhitneyDecomposition& out) {
    if (!pyr.valid(j, b)) return;
    const std::int64_t v = pyr.at(j, b);
    const std::int64_t s = std::int64_t(1) << j;
    const bool inside = v >= 0;
    if (inside && (s * s <= v || j == 0)) {
        DyadicCube q;
        q.level = g.level - j;
        q.side = int(s);
        for (int a = 0; a < 3; ++a) {
            q.index[std::size_t(a)] = b[a];
            q.lo[a] = int(b[a] * s);
        }
        if (g.dim == 2) q.lo[2] = 0;
        q.at_resolution_floor = s * s > v;
        out.cubes.push_back(q);
        out.dist2.push_back(v);
        return;
    }
    if (j == 0) return;
    const int zr = g.dim == 3 ? 2 : 1;
    for (int dz = 0; dz < zr; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx)
                subdivide(g, pyr, j - 1, {2 * b[0] + dx, 2 * b[1] + dy, g.dim == 3 ? 2 * b[2] + dz : 0}, out);
}

template <class F>
void for_each_cell_in_box(const Grid& g, const Coord& lo, const Coord& hi, F&& f) {
    // hi exclusive, clipped to the grid
    const int z0 = std::max(lo[2], 0), z1 = std::min(hi[2], g.cells[2]);
    const int y0 = std::max(lo[1], 0), y1 = std::min(hi[1], g.cells[1]);
    const int x0 = std::max(lo[0], 0), x1 = std::min(hi[0], g.cells[0]);
    for (int z = z0; z < z1; ++z)
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) f(g.index(x, y, z), Coord{x, y, z});
}

Coord box_hi(const Grid& g, const DyadicCube& q, int grow) {
    Coord hi{};
    for (int a = 0; a < 3; ++a) hi[a] = (a < g.dim) ? q.lo[a] + q.side + grow : 1;
    return hi;
}

Coord box_lo(const Grid& g, const DyadicCube& q, int grow) {
    Coord lo{};
    for (int a = 0; a < 3; ++a) lo[a] = (a < g.dim) ? q.lo[a] - grow : 0;
    return lo;
}

}  // namespace

Index WhitneyDecomposition::floor_cubes() const {
    return Index(std::count_if(cubes.begin(), cubes.end(), [](const DyadicCube& q) { return q.at_resolution_floor; }));
}

double WhitneyDecomposition::floor_measure() const {
    return double(floor_cubes()) * open_set.grid().cell_volume();
}

double WhitneyDecomposition::dist(std::size_t k) const {
    return std::sqrt(double(dist2.at(k))) * open_set.grid().spacing();
}

WhitneyDecomposition whitney_decompose(const CellSet& a) {
    const Grid& g = a.grid();
    const Index n = a.count();
    if (n == 0) throw InvalidInput("whitney_decompose: empty open set");
    if (n == g.size()) throw InvalidInput("whitney_decompose: open set fills the grid, boundary is empty");

    const CellSet inner = interior(a);
    const std::vector<double> d2 = squared_distance_transform(inner.complement(), false);
    std::vector<std::int64_t> base(std::size_t(g.size()));
    for (Index i = 0; i < g.size(); ++i)
        base[std::size_t(i)] = a.test(i) ? std::int64_t(std::llround(d2[std::size_t(i)])) : -1;
    const Pyramid pyr(g, std::move(base));

    WhitneyDecomposition w;
    w.open_set = a;
    subdivide(g, pyr, pyr.top(), {0, 0, 0}, w);

    // W1/W2: every cube lies in a and the cubes tile a.
    w.cube_of.assign(std::size_t(g.size()), -1);
    Index covered = 0;
    for (std::size_t k = 0; k < w.cubes.size(); ++k) {
        const DyadicCube& q = w.cubes[k];
        for_each_cell_in_box(g, box_lo(g, q, 0), box_hi(g, q, 0), [&](Index i, const Coord&) {
            if (!a.test(i)) throw ContractViolation("whitney W1: cube leaves the open set");
            if (w.cube_of[std::size_t(i)] >= 0) throw ContractViolation("whitney W2: overlapping cubes");
            w.cube_of[std::size_t(i)] = std::int32_t(k);
            ++covered;
        });
    }
    if (covered != n) throw ContractViolation("whitney W2: cubes do not cover the open set");

    // W3 in exact squared cell units: s^2 <= d^2 <= 16 n s^2.
    for (std::size_t k = 0; k < w.cubes.size(); ++k) {
        const DyadicCube& q = w.cubes[k];
        if (q.at_resolution_floor) continue;
        const std::int64_t s2 = std::int64_t(q.side) * q.side;
        if (w.dist2[k] < s2 || w.dist2[k] > 16 * g.dim * s2)
            throw ContractViolation("whitney W3: cube size not comparable to boundary distance");
    }

    // Neighbour graph from the one-cell shell around each cube; W4.
    w.neighbors.resize(w.cubes.size());
    parallel_blocks(Index(w.cubes.size()), 256, [&](Index k0, Index k1) {
        for (Index k = k0; k < k1; ++k) {
            const DyadicCube& q = w.cubes[std::size_t(k)];
            auto& nb = w.neighbors[std::size_t(k)];
            for_each_cell_in_box(g, box_lo(g, q, 1), box_hi(g, q, 1), [&](Index i, const Coord& c) {
                bool shell = false;
                for (int ax = 0; ax < g.dim; ++ax)
                    if (c[ax] < q.lo[ax] || c[ax] >= q.lo[ax] + q.side) shell = true;
                if (!shell) return;
                const std::int32_t o = w.cube_of[std::size_t(i)];
                if (o >= 0) nb.push_back(o);
            });
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
    });
    for (std::size_t k = 0; k < w.cubes.size(); ++k)
        for (std::int32_t o : w.neighbors[k]) {
            const int si = w.cubes[k].side, sj = w.cubes[std::size_t(o)].side;
            if (4 * sj < si || sj > 4 * si) throw ContractViolation("whitney W4: neighbouring cube sizes differ by more than 4");
        }
    return w;
}

PartitionOfUnity partition_of_unity(WhitneyDecomposition w) {
    const Grid g = w.open_set.grid();
    PartitionOfUnity p;
    const std::size_t m = w.cubes.size();
    p.support.resize(m);
    p.values.resize(m);

    parallel_blocks(Index(m), 64, [&](Index k0, Index k1) {
        for (Index k = k0; k < k1; ++k) {
            const DyadicCube& q = w.cubes[std::size_t(k)];
            const int grow = (q.side + 7) / 8;
            const double reach = q.side / 8.0;
            auto& sup = p.support[std::size_t(k)];
            auto& val = p.values[std::size_t(k)];
            for_each_cell_in_box(g, box_lo(g, q, grow), box_hi(g, q, grow), [&](Index i, const Coord& c) {
                double d2 = 0.0;
                for (int ax = 0; ax < g.dim; ++ax) {
                    const double x = c[ax] + 0.5;
                    const double gap = std::max({0.0, q.lo[ax] - x, x - (q.lo[ax] + q.side)});
                    d2 += gap * gap;
                }
                const double eta = std::clamp(1.0 - 8.0 * std::sqrt(d2) / q.side, 0.0, 1.0);
                if (eta <= 0.0) return;
                if (!w.open_set.test(i)) throw ContractViolation("partition of unity: bump leaves the open set");
                if (std::sqrt(d2) > reach) throw ContractViolation("partition of unity: support exceeds B(Q, l/8)");
                sup.push_back(i);
                val.push_back(eta);
            });
        }
    });

    std::vector<double> sum(std::size_t(g.size()), 0.0);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < p.support[k].size(); ++t) sum[std::size_t(p.support[k][t])] += p.values[k][t];
    for (Index i = 0; i < g.size(); ++i)
        if (w.open_set.test(i) && !(sum[std::size_t(i)] >= 1.0))
            throw ContractViolation("partition of unity: uncovered cell");
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < p.support[k].size(); ++t) p.values[k][t] /= sum[std::size_t(p.support[k][t])];

    // Check the normalisation independently of the division above.
    std::vector<double> check(std::size_t(g.size()), 0.0);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < p.support[k].size(); ++t) check[std::size_t(p.support[k][t])] += p.values[k][t];
    for (Index i = 0; i < g.size(); ++i) {
        const double c = check[std::size_t(i)];
        if (w.open_set.test(i) ? std::abs(c - 1.0) > 1e-9 : c != 0.0)
            throw ContractViolation("partition of unity: bumps do not sum to one");
    }

    // Gradient constant: side(Q) * max face jump of psi_Q, in cell units.
    std::vector<double> worst(m, 0.0);
    parallel_blocks(Index(m), 64, [&](Index k0, Index k1) {
        std::vector<double> local;
        for (Index k = k0; k < k1; ++k) {
            const DyadicCube& q = w.cubes[std::size_t(k)];
            const int grow = (q.side + 7) / 8 + 1;
            const Coord lo = box_lo(g, q, grow), hi = box_hi(g, q, grow);
            const Coord ext{hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
            local.assign(std::size_t(Index(ext[0]) * ext[1] * ext[2]), 0.0);
            auto at = [&](const Coord& c) -> double& {
                return local[std::size_t((c[0] - lo[0]) + Index(ext[0]) * ((c[1] - lo[1]) + Index(ext[1]) * (c[2] - lo[2])))];
            };
            const auto& sup = p.support[std::size_t(k)];
            for (std::size_t t = 0; t < sup.size(); ++t) at(g.coords(sup[t])) = p.values[std::size_t(k)][t];
            double jump = 0.0;
            for (Index i : sup) {
                const Coord c = g.coords(i);
                for (int ax = 0; ax < g.dim; ++ax)
                    for (int s : {-1, 1}) {
                        Coord n = c;
                        n[ax] += s;
                        const double other = g.inside(n) ? at(n) : 0.0;
                        jump = std::max(jump, std::abs(at(c) - other));
                    }
            }
            worst[std::size_t(k)] = q.side * jump;
        }
    });
    p.gradient_bound_constant = m ? *std::max_element(worst.begin(), worst.end()) : 0.0;
    if (p.gradient_bound_constant > kGradientCap)
        throw ContractViolation("partition of unity: gradient constant " + std::to_string(p.gradient_bound_constant) +
                                " exceeds the cap");
    p.decomposition = std::move(w);
    return p;
}

std::vector<double> cube_means(const GridFunction& u, const WhitneyDecomposition& w) {
    require_same(u.grid(), w.open_set.grid(), "cube_means");
    const Grid& g = u.grid();
    std::vector<double> means(w.cubes.size(), 0.0);
    parallel_blocks(Index(w.cubes.size()), 256, [&](Index k0, Index k1) {
        for (Index k = k0; k < k1; ++k) {
            const DyadicCube& q = w.cubes[std::size_t(k)];
            double s = 0.0;
            Index cnt = 0;
            for_each_cell_in_box(g, box_lo(g, q, 0), box_hi(g, q, 0), [&](Index i, const Coord&) {
                s += u[i];
                ++cnt;
            });
            means[std::size_t(k)] = s / double(cnt);
        }
    });
    return means;
}

GridFunction smooth(const GridFunction& u, const PartitionOfUnity& pou) {
    const WhitneyDecomposition& w = pou.decomposition;
    const std::vector<double> means = cube_means(u, w);
    GridFunction out = u;
    for (Index i = 0; i < u.size(); ++i)
        if (w.open_set.test(i)) out[i] = 0.0;
    for (std::size_t k = 0; k < w.cubes.size(); ++k)
        for (std::size_t t = 0; t < pou.support[k].size(); ++t) out[pou.support[k][t]] += means[k] * pou.values[k][t];
    return out;
}

GridFunction smooth_bv(const GridFunction& u, const CellSet& b, const CellSet& a) {
    require_same(u.grid(), a.grid(), "smooth_bv");
    require_same(b.grid(), a.grid(), "smooth_bv");
    if (!a.subset_of(b)) throw ContractViolation("smooth_bv: A is not contained in B");
    return smooth(u, partition_of_unity(whitney_decompose(a)));
}

Collar::Collar(const CellSet& a) : grid_(a.grid()) {
    CellSet touching(grid_);
    for_each_face(grid_, [&](Index p, Index q, int) {
        if (a.test(p) != a.test(q)) {
            touching.set(p);
            touching.set(q);
        }
    });
    dist2_ = squared_distance_transform(touching, false);
}

CellSet Collar::cells(double width) const {
    const double reach = width / grid_.spacing() - 0.5;
    CellSet s(grid_);
    if (reach < 0) return s;
    for (Index i = 0; i < grid_.size(); ++i) s.set(i, dist2_[std::size_t(i)] <= reach * reach);
    return s;
}

std::vector<CollarSample> collar_variation_profile(const GridFunction& v, const CellSet& a,
                                                   const std::vector<double>& widths) {
    require_same(v.grid(), a.grid(), "collar_variation_profile");
    const double h = v.grid().spacing();
    for (std::size_t k = 0; k < widths.size(); ++k) {
        if (!(widths[k] >= 2.0 * h)) throw ScaleError("collar width below 2h");
        if (k && !(widths[k] < widths[k - 1])) throw InvalidInput("collar widths must be strictly descending");
    }
    const Collar collar(a);
    const EdgeMeasure mu = total_variation(v).measure;
    std::vector<CollarSample> out;
    for (double w : widths) out.push_back({w, mu.restrict(collar.cells(w)).total()});
    return out;
}

}  // namespace gmt
