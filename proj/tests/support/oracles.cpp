#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracle {
namespace {

int dim_of(const Grid& g) { return g.dim; }

bool in_set(const CellSet& s, int x, int y, int z) {
    const Grid& g = s.grid();
    if (x < 0 || y < 0 || z < 0 || x >= g.cells[0] || y >= g.cells[1] || z >= g.cells[2]) return false;
    return s.test(g.index(x, y, z));
}

struct Dsu {
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

}  // namespace

std::int64_t jump_faces(const CellSet& s) {
    const Grid& g = s.grid();
    std::int64_t n = 0;
    for (int z = 0; z < g.cells[2]; ++z)
        for (int y = 0; y < g.cells[1]; ++y)
            for (int x = 0; x < g.cells[0]; ++x) {
                const bool a = in_set(s, x, y, z);
                if (x + 1 < g.cells[0] && a != in_set(s, x + 1, y, z)) ++n;
                if (dim_of(g) > 1 && y + 1 < g.cells[1] && a != in_set(s, x, y + 1, z)) ++n;
                if (dim_of(g) > 2 && z + 1 < g.cells[2] && a != in_set(s, x, y, z + 1)) ++n;
            }
    return n;
}

double perimeter(const CellSet& s) { return double(jump_faces(s)) * s.grid().face_area(); }

double total_variation(const GridFunction& u) {
    const Grid& g = u.grid();
    double tv = 0.0;
    for (int z = 0; z < g.cells[2]; ++z)
        for (int y = 0; y < g.cells[1]; ++y)
            for (int x = 0; x < g.cells[0]; ++x) {
                const double a = u[g.index(x, y, z)];
                if (x + 1 < g.cells[0]) tv += std::abs(a - u[g.index(x + 1, y, z)]);
                if (g.dim > 1 && y + 1 < g.cells[1]) tv += std::abs(a - u[g.index(x, y + 1, z)]);
                if (g.dim > 2 && z + 1 < g.cells[2]) tv += std::abs(a - u[g.index(x, y, z + 1)]);
            }
    return tv * g.face_area();
}

std::vector<double> levels(const GridFunction& u) {
    std::vector<double> v = u.values();
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

double coarea_integral(const GridFunction& u) {
    const auto t = levels(u);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        CellSet e(u.grid());
        for (Index i = 0; i < u.size(); ++i) e.set(i, u[i] > t[k]);
        sum += (t[k + 1] - t[k]) * perimeter(e);
    }
    return sum;
}

CellSet dilate(const CellSet& s) {
    const Grid& g = s.grid();
    CellSet out(g);
    const int zr = g.dim == 3 ? 1 : 0;
    for (int z = 0; z < g.cells[2]; ++z)
        for (int y = 0; y < g.cells[1]; ++y)
            for (int x = 0; x < g.cells[0]; ++x) {
                bool hit = false;
                for (int dz = -zr; dz <= zr && !hit; ++dz)
                    for (int dy = -1; dy <= 1 && !hit; ++dy)
                        for (int dx = -1; dx <= 1 && !hit; ++dx) hit = in_set(s, x + dx, y + dy, z + dz);
                out.set(g.index(x, y, z), hit);
            }
    return out;
}

CellSet erode(const CellSet& s) {
    const Grid& g = s.grid();
    CellSet out(g);
    const int zr = g.dim == 3 ? 1 : 0;
    for (int z = 0; z < g.cells[2]; ++z)
        for (int y = 0; y < g.cells[1]; ++y)
            for (int x = 0; x < g.cells[0]; ++x) {
                bool all = true;
                for (int dz = -zr; dz <= zr && all; ++dz)
                    for (int dy = -1; dy <= 1 && all; ++dy)
                        for (int dx = -1; dx <= 1 && all; ++dx) all = in_set(s, x + dx, y + dy, z + dz);
                out.set(g.index(x, y, z), all);
            }
    return out;
}

int count_face_components(const CellSet& s) {
    const Grid& g = s.grid();
    Dsu d(std::size_t(g.size()));
    for (int z = 0; z < g.cells[2]; ++z)
        for (int y = 0; y < g.cells[1]; ++y)
            for (int x = 0; x < g.cells[0]; ++x) {
                if (!in_set(s, x, y, z)) continue;
                const Index p = g.index(x, y, z);
                if (in_set(s, x + 1, y, z)) d.join(std::size_t(p), std::size_t(g.index(x + 1, y, z)));
                if (in_set(s, x, y + 1, z)) d.join(std::size_t(p), std::size_t(g.index(x, y + 1, z)));
                if (g.dim == 3 && in_set(s, x, y, z + 1)) d.join(std::size_t(p), std::size_t(g.index(x, y, z + 1)));
            }
    int n = 0;
    for (Index i = 0; i < g.size(); ++i)
        if (s.test(i) && d.find(std::size_t(i)) == std::size_t(i)) ++n;
    return n;
}

std::int64_t cube_gap2(const CellSet& a, const gmt::Coord& lo, int side) {
    const Grid& g = a.grid();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const int zlo = g.dim == 3 ? -1 : 0, zhi = g.dim == 3 ? g.cells[2] : 0;
    for (int z = zlo; z <= zhi; ++z)
        for (int y = -1; y <= g.cells[1]; ++y)
            for (int x = -1; x <= g.cells[0]; ++x) {
                if (in_set(a, x, y, z)) continue;
                const int c[3] = {x, y, z};
                std::int64_t d2 = 0;
                for (int ax = 0; ax < g.dim; ++ax) {
                    const std::int64_t gap = std::max({0, c[ax] - (lo[ax] + side), lo[ax] - (c[ax] + 1)});
                    d2 += gap * gap;
                }
                best = std::min(best, d2);
            }
    return best;
}

double path_length(const CellSet& allowed, Index z, Index w) {
    const Grid& g = allowed.grid();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(std::size_t(g.size()), inf);
    d[std::size_t(z)] = 0.0;
    for (bool changed = true; changed;) {
        changed = false;
        for (Index i = 0; i < g.size(); ++i) {
            if (!(allowed.test(i) || i == z || i == w) || d[std::size_t(i)] == inf) continue;
            const gmt::Coord c = g.coords(i);
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (!dx && !dy) continue;
                    const gmt::Coord n{c[0] + dx, c[1] + dy, 0};
                    if (!g.inside(n)) continue;
                    const Index j = g.index(n);
                    if (!(allowed.test(j) || j == w)) continue;
                    const double step = (dx && dy) ? std::sqrt(2.0) : 1.0;
                    if (d[std::size_t(i)] + step < d[std::size_t(j)] - 1e-12) {
                        d[std::size_t(j)] = d[std::size_t(i)] + step;
                        changed = true;
                    }
                }
        }
    }
    return d[std::size_t(w)] == inf ? -1.0 : d[std::size_t(w)];
}

std::int64_t ball_count(const CellSet& s, Index center, double radius_cells) {
    const Grid& g = s.grid();
    const gmt::Coord c = g.coords(center);
    std::int64_t n = 0;
    for (Index i = 0; i < g.size(); ++i) {
        const gmt::Coord p = g.coords(i);
        double d2 = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) d2 += double(p[ax] - c[ax]) * double(p[ax] - c[ax]);
        if (d2 <= radius_cells * radius_cells && s.test(i)) ++n;
    }
    return n;
}

}  // namespace oracle
