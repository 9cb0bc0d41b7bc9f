#include "gmt/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gmt {
namespace {

constexpr double kFar = 1e30;

// Lower envelope of parabolas; f and out have length n, stride-free buffers.
void edt_1d(const std::vector<double>& f, std::vector<double>& out, std::vector<int>& v, std::vector<double>& z) {
    const int n = int(f.size());
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[std::size_t(q)] >= kFar) continue;
        const double fq = f[std::size_t(q)] + double(q) * q;
        while (k >= 0) {
            const int p = v[std::size_t(k)];
            const double s = (fq - (f[std::size_t(p)] + double(p) * p)) / (2.0 * (q - p));
            if (s <= z[std::size_t(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[std::size_t(k)] = q;
        if (k == 0) {
            z[0] = -std::numeric_limits<double>::infinity();
        } else {
            const int p = v[std::size_t(k - 1)];
            z[std::size_t(k)] = (fq - (f[std::size_t(p)] + double(p) * p)) / (2.0 * (q - p));
        }
    }
    if (k < 0) {
        std::fill(out.begin(), out.end(), kFar);
        return;
    }
    int j = 0;
    for (int q = 0; q < n; ++q) {
        while (j < k && z[std::size_t(j + 1)] < q) ++j;
        const int p = v[std::size_t(j)];
        out[std::size_t(q)] = f[std::size_t(p)] + double(q - p) * (q - p);
    }
}

}  // namespace

std::vector<double> squared_distance_transform(const CellSet& sites, bool frame_is_site) {
    const Grid& g0 = sites.grid();
    const int pad = frame_is_site ? 1 : 0;
    Coord ext{};
    for (int a = 0; a < 3; ++a) ext[a] = g0.cells[a] + ((a < g0.dim) ? 2 * pad : 0);
    const Index nx = ext[0], ny = ext[1], nz = ext[2];
    std::vector<double> d(std::size_t(nx * ny * nz), kFar);
    for (Index z = 0; z < nz; ++z)
        for (Index y = 0; y < ny; ++y)
            for (Index x = 0; x < nx; ++x) {
                const int ox = int(x) - pad, oy = int(y) - (g0.dim >= 2 ? pad : 0),
                          oz = int(z) - (g0.dim == 3 ? pad : 0);
                const Coord c{ox, oy, oz};
                const bool site = g0.inside(c) ? sites.test(g0.index(c)) : true;
                if (site) d[std::size_t(x + nx * (y + ny * z))] = 0.0;
            }

    std::vector<double> f, out;
    std::vector<int> v;
    std::vector<double> zb;
    for (int axis = 0; axis < g0.dim; ++axis) {
        const Index n = ext[axis];
        const Index stride = axis == 0 ? 1 : axis == 1 ? nx : nx * ny;
        f.assign(std::size_t(n), 0.0);
        out.assign(std::size_t(n), 0.0);
        v.assign(std::size_t(n), 0);
        zb.assign(std::size_t(n) + 1, 0.0);
        const Index total = nx * ny * nz;
        for (Index base = 0; base < total; ++base) {
            // base must be the first cell of a line along `axis`
            const Index coord = (base / stride) % n;
            if (coord != 0) continue;
            for (Index i = 0; i < n; ++i) f[std::size_t(i)] = d[std::size_t(base + i * stride)];
            edt_1d(f, out, v, zb);
            for (Index i = 0; i < n; ++i) d[std::size_t(base + i * stride)] = out[std::size_t(i)];
        }
    }

    if (!pad) return d;
    std::vector<double> r(std::size_t(g0.size()));
    for (Index i = 0; i < g0.size(); ++i) {
        const Coord c = g0.coords(i);
        const Index x = c[0] + pad, y = c[1] + (g0.dim >= 2 ? pad : 0), z = c[2] + (g0.dim == 3 ? pad : 0);
        r[std::size_t(i)] = d[std::size_t(x + nx * (y + ny * z))];
    }
    return r;
}

BallCounter::BallCounter(const CellSet& set) : grid_(set.grid()) {
    const Index nx = grid_.cells[0];
    const Index rows = Index(grid_.cells[1]) * grid_.cells[2];
    prefix_.assign(std::size_t((nx + 1) * rows), 0);
    for (Index r = 0; r < rows; ++r) {
        std::int32_t acc = 0;
        for (Index x = 0; x < nx; ++x) {
            acc += set.test(r * nx + x) ? 1 : 0;
            prefix_[std::size_t(r * (nx + 1) + x + 1)] = acc;
        }
    }
}

BallCounter::Count BallCounter::count(Index center, double radius_cells) const {
    const Coord c = grid_.coords(center);
    const double r2 = radius_cells * radius_cells;
    const int R = int(std::floor(radius_cells));
    const Index nx = grid_.cells[0];
    const int zr = grid_.dim == 3 ? R : 0;
    Count out;
    for (int dz = -zr; dz <= zr; ++dz) {
        const int z = c[2] + dz;
        if (z < 0 || z >= grid_.cells[2]) continue;
        for (int dy = -R; dy <= R; ++dy) {
            const int y = c[1] + dy;
            if (y < 0 || y >= grid_.cells[1]) continue;
            const double rem = r2 - double(dy) * dy - double(dz) * dz;
            if (rem < 0) continue;
            int w = int(std::floor(std::sqrt(rem)));
            while (double(w + 1) * (w + 1) <= rem) ++w;
            while (w > 0 && double(w) * w > rem) --w;
            const int x0 = std::max(0, c[0] - w);
            const int x1 = std::min(int(nx) - 1, c[0] + w);
            if (x0 > x1) continue;
            const Index row = Index(y) + Index(grid_.cells[1]) * z;
            const std::int32_t* p = &prefix_[std::size_t(row * (nx + 1))];
            out.in_set += p[x1 + 1] - p[x0];
            out.in_grid += x1 - x0 + 1;
        }
    }
    return out;
}

}  // namespace gmt
