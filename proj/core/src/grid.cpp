#include "gmt/grid.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gmt/errors.hpp"

namespace gmt {

Grid Grid::make(int dim, int level, Coord cells, std::array<double, 3> origin) {
    if (dim != 2 && dim != 3) throw InvalidInput("grid dimension must be 2 or 3");
    if (level < 1 || level > 30) throw InvalidInput("grid level must lie in [1, 30]");
    if (dim == 2) cells[2] = 1;
    for (int a = 0; a < 3; ++a)
        if (cells[a] <= 0) throw InvalidInput("grid extent must be positive on every axis");
    Grid g;
    g.dim = dim;
    g.level = level;
    g.cells = cells;
    g.origin = origin;
    if (dim == 2) g.origin[2] = 0.0;
    return g;
}

bool Grid::on_frame(Index i) const {
    const Coord c = coords(i);
    for (int a = 0; a < dim; ++a)
        if (c[a] == 0 || c[a] == cells[a] - 1) return true;
    return false;
}

std::array<double, 3> Grid::center(Index i) const {
    const Coord c = coords(i);
    const double h = spacing();
    std::array<double, 3> p{};
    for (int a = 0; a < 3; ++a) p[a] = origin[a] + (c[a] + 0.5) * h;
    if (dim == 2) p[2] = 0.0;
    return p;
}

void require_same(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw ContractViolation(std::string("grid mismatch: ") + what);
}

CellSet::CellSet(const Grid& g, std::vector<std::uint8_t> bits) : grid_(g), bits_(std::move(bits)) {
    if (Index(bits_.size()) != g.size()) throw ContractViolation("mask size does not match grid extent");
    for (auto& b : bits_) b = b ? 1 : 0;
}

CellSet CellSet::full(const Grid& g) {
    CellSet s(g);
    std::fill(s.bits_.begin(), s.bits_.end(), std::uint8_t(1));
    return s;
}

Index CellSet::count() const {
    return std::accumulate(bits_.begin(), bits_.end(), Index(0));
}

std::vector<Index> CellSet::members() const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(Index(i));
    return out;
}

CellSet CellSet::complement() const {
    CellSet c(grid_);
    for (std::size_t i = 0; i < bits_.size(); ++i) c.bits_[i] = bits_[i] ? 0 : 1;
    return c;
}

CellSet& CellSet::operator|=(const CellSet& o) {
    require_same(grid_, o.grid_, "set union");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
}

CellSet& CellSet::operator&=(const CellSet& o) {
    require_same(grid_, o.grid_, "set intersection");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
}

CellSet& CellSet::operator-=(const CellSet& o) {
    require_same(grid_, o.grid_, "set difference");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= std::uint8_t(1 - o.bits_[i]);
    return *this;
}

bool CellSet::subset_of(const CellSet& o) const {
    require_same(grid_, o.grid_, "subset test");
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !o.bits_[i]) return false;
    return true;
}

GridFunction::GridFunction(const Grid& g, std::vector<double> values) : grid_(g), values_(std::move(values)) {
    if (Index(values_.size()) != g.size()) throw ContractViolation("value count does not match grid extent");
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidInput("grid function values must be finite");
}

GridFunction GridFunction::indicator(const CellSet& e) {
    GridFunction u(e.grid());
    for (Index i = 0; i < e.size(); ++i) u[i] = e.test(i) ? 1.0 : 0.0;
    return u;
}

EdgeMeasure::EdgeMeasure(const Grid& g, std::vector<Face> faces) : grid_(g), faces_(std::move(faces)) {
    for (const Face& f : faces_) {
        if (!(f.weight >= 0.0) || !std::isfinite(f.weight))
            throw InvalidInput("edge measure weights must be finite and nonnegative");
        total_ += f.weight;
    }
}

EdgeMeasure EdgeMeasure::restrict(const CellSet& region) const {
    require_same(grid_, region.grid(), "measure restriction");
    std::vector<Face> kept;
    for (const Face& f : faces_)
        if (region.test(f.a) || region.test(f.b)) kept.push_back(f);
    return EdgeMeasure(grid_, std::move(kept));
}

}  // namespace gmt
