#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace gmt {

using Index = std::int64_t;
using Coord = std::array<int, 3>;

struct Grid {
    int dim = 2;
    int level = 1;
    Coord cells{1, 1, 1};
    std::array<double, 3> origin{0.0, 0.0, 0.0};

    // Throws InvalidInput on a bad dimension, level or extent.
    static Grid make(int dim, int level, Coord cells, std::array<double, 3> origin = {});

    double spacing() const { return std::ldexp(1.0, -level); }
    double cell_volume() const { return std::pow(spacing(), dim); }
    double face_area() const { return std::pow(spacing(), dim - 1); }

    Index size() const { return Index(cells[0]) * cells[1] * cells[2]; }
    Index stride(int axis) const {
        return axis == 0 ? 1 : axis == 1 ? Index(cells[0]) : Index(cells[0]) * cells[1];
    }
    Index index(int x, int y, int z = 0) const { return x + Index(cells[0]) * (y + Index(cells[1]) * z); }
    Index index(const Coord& c) const { return index(c[0], c[1], c[2]); }
    Coord coords(Index i) const {
        Coord c{};
        c[0] = int(i % cells[0]);
        i /= cells[0];
        c[1] = int(i % cells[1]);
        c[2] = int(i / cells[1]);
        return c;
    }
    bool inside(const Coord& c) const {
        for (int a = 0; a < 3; ++a)
            if (c[a] < 0 || c[a] >= cells[a]) return false;
        return true;
    }
    bool on_frame(Index i) const;
    std::array<double, 3> center(Index i) const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

// Throws ContractViolation when the two grids differ.
void require_same(const Grid& a, const Grid& b, const char* what);

class CellSet {
public:
    CellSet() = default;
    explicit CellSet(const Grid& g) : grid_(g), bits_(std::size_t(g.size()), 0) {}
    CellSet(const Grid& g, std::vector<std::uint8_t> bits);

    static CellSet full(const Grid& g);

    const Grid& grid() const { return grid_; }
    Index size() const { return grid_.size(); }
    bool test(Index i) const { return bits_[std::size_t(i)] != 0; }
    bool operator[](Index i) const { return test(i); }
    void set(Index i, bool v = true) { bits_[std::size_t(i)] = v ? 1 : 0; }
    bool test(const Coord& c) const { return grid_.inside(c) && test(grid_.index(c)); }

    Index count() const;
    bool empty() const { return count() == 0; }
    double measure() const { return double(count()) * grid_.cell_volume(); }
    std::vector<Index> members() const;

    CellSet complement() const;
    CellSet& operator|=(const CellSet& o);
    CellSet& operator&=(const CellSet& o);
    CellSet& operator-=(const CellSet& o);
    friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
    friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
    friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }
    bool subset_of(const CellSet& o) const;
    friend bool operator==(const CellSet&, const CellSet&) = default;

    const std::vector<std::uint8_t>& bits() const { return bits_; }

private:
    Grid grid_;
    std::vector<std::uint8_t> bits_;
};

class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const Grid& g, double fill = 0.0) : grid_(g), values_(std::size_t(g.size()), fill) {}
    // Throws InvalidInput if any value is not finite.
    GridFunction(const Grid& g, std::vector<double> values);

    static GridFunction indicator(const CellSet& e);

    const Grid& grid() const { return grid_; }
    Index size() const { return grid_.size(); }
    double operator[](Index i) const { return values_[std::size_t(i)]; }
    double& operator[](Index i) { return values_[std::size_t(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    Grid grid_;
    std::vector<double> values_;
};

struct Face {
    Index a;
    Index b;
    double weight;
};

// Weights of a discrete variation measure, one entry per interior face with
// nonzero weight. Faces not listed carry zero weight.
class EdgeMeasure {
public:
    EdgeMeasure() = default;
    EdgeMeasure(const Grid& g, std::vector<Face> faces);

    const Grid& grid() const { return grid_; }
    const std::vector<Face>& faces() const { return faces_; }
    double total() const { return total_; }
    // Faces with at least one endpoint in `region`.
    EdgeMeasure restrict(const CellSet& region) const;

private:
    Grid grid_;
    std::vector<Face> faces_;
    double total_ = 0.0;
};

// Visit every interior face {p, p + stride(axis)} once.
template <class F>
void for_each_face(const Grid& g, F&& f) {
    for (int z = 0; z < g.cells[2]; ++z)
        for (int y = 0; y < g.cells[1]; ++y)
            for (int x = 0; x < g.cells[0]; ++x) {
                const Index p = g.index(x, y, z);
                if (x + 1 < g.cells[0]) f(p, p + 1, 0);
                if (g.dim >= 2 && y + 1 < g.cells[1]) f(p, p + g.stride(1), 1);
                if (g.dim == 3 && z + 1 < g.cells[2]) f(p, p + g.stride(2), 2);
            }
}

// Face neighbours (4 in 2D, 6 in 3D) that lie inside the grid.
template <class F>
void for_each_face_neighbor(const Grid& g, Index p, F&& f) {
    const Coord c = g.coords(p);
    for (int a = 0; a < g.dim; ++a) {
        if (c[a] > 0) f(p - g.stride(a));
        if (c[a] + 1 < g.cells[a]) f(p + g.stride(a));
    }
}

// Face, edge and vertex neighbours (8 in 2D, 26 in 3D). `outside` is called
// once for every neighbour position beyond the frame.
template <class F, class G>
void for_each_full_neighbor(const Grid& g, Index p, F&& f, G&& outside) {
    const Coord c = g.coords(p);
    const int zr = g.dim == 3 ? 1 : 0;
    for (int dz = -zr; dz <= zr; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0 && dz == 0) continue;
                const Coord n{c[0] + dx, c[1] + dy, c[2] + dz};
                if (g.inside(n))
                    f(g.index(n));
                else
                    outside();
            }
}

template <class F>
void for_each_full_neighbor(const Grid& g, Index p, F&& f) {
    for_each_full_neighbor(g, p, std::forward<F>(f), [] {});
}

}  // namespace gmt
