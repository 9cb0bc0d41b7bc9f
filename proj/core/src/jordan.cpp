#include "gmt/planar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "gmt/errors.hpp"
#include "gmt/measure.hpp"

namespace gmt {
namespace {

// Directions in counter-clockwise order: +x, +y, -x, -y.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};


std::int64_t shoelace(const std::vector<Vertex>& v) {
    std::int64_t a = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vertex& p = v[i];
        const Vertex& q = v[(i + 1) % v.size()];
        a += std::int64_t(p[0]) * q[1] - std::int64_t(q[0]) * p[1];
    }
    return a;
}

}  // namespace

std::vector<Index> cycle_interior_cells(const Grid& g, const BoundaryCycle& c) {
    // vertical edges toggle parity of the cells to their right in that row
    std::unordered_map<int, std::vector<int>> rows;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        const Vertex& p = c.vertices[i];
        const Vertex& q = c.vertices[(i + 1) % c.vertices.size()];
        if (p[0] == q[0]) rows[std::min(p[1], q[1])].push_back(p[0]);
    }
    std::vector<Index> cells;
    for (auto& [y, xs] : rows) {
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2)
            for (int x = xs[k]; x < xs[k + 1]; ++x) cells.push_back(g.index(x, y));
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

CellSet JordanDecomposition::part_set(std::size_t j) const {
    CellSet s(set.grid());
    for (Index i : parts.at(j)) s.set(i);
    return s;
}

CellSet JordanDecomposition::interior_of(int k) const {
    CellSet s(set.grid());
    for (Index i : cycle_interior_cells(set.grid(), cycles.at(std::size_t(k)))) s.set(i);
    return s;
}

std::vector<int> JordanDecomposition::children(int k) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (cycles[i].parent == k) out.push_back(int(i));
    return out;
}

double JordanDecomposition::total_length() const {
    double s = 0.0;
    for (const auto& c : cycles) s += c.length;
    return s;
}

JordanDecomposition jordan_decompose(const CellSet& e) {
    const Grid& g = e.grid();
    if (g.dim != 2) throw InvalidInput("jordan_decompose: planar sets only");
    for (Index i = 0; i < g.size(); ++i)
        if (e.test(i) && g.on_frame(i)) throw InvalidInput("jordan_decompose: set touches the grid frame");

    const int vx = g.cells[0] + 1, vy = g.cells[1] + 1;
    auto vid = [vx](int x, int y) { return std::size_t(x) + std::size_t(vx) * std::size_t(y); };
    // out[v] bit d: unused boundary edge leaving v in direction d
    std::vector<std::uint8_t> out(std::size_t(vx) * std::size_t(vy), 0);
    std::size_t edges = 0;
    for (int y = 0; y < g.cells[1]; ++y)
        for (int x = 0; x < g.cells[0]; ++x) {
            if (!e.test(g.index(x, y))) continue;
            auto in = [&](int cx, int cy) { return e.test(Coord{cx, cy, 0}); };
            if (!in(x, y - 1)) { out[vid(x, y)] |= 1u << 0; ++edges; }
            if (!in(x + 1, y)) { out[vid(x + 1, y)] |= 1u << 1; ++edges; }
            if (!in(x, y + 1)) { out[vid(x + 1, y + 1)] |= 1u << 2; ++edges; }
            if (!in(x - 1, y)) { out[vid(x, y + 1)] |= 1u << 3; ++edges; }
        }

    JordanDecomposition d;
    d.set = e;
    const double h = g.spacing();
    std::vector<std::vector<Vertex>> raw;
    for (int y = 0; y < vy && edges; ++y)
        for (int x = 0; x < vx; ++x) {
            while (out[vid(x, y)]) {
                std::vector<Vertex> walk;
                Vertex v{x, y};
                int dir = -1;
                for (int k = 0; k < 4; ++k)
                    if (out[vid(x, y)] & (1u << k)) { dir = k; break; }
                const Vertex start = v;
                const int start_dir = dir;
                for (;;) {
                    walk.push_back(v);
                    out[vid(v[0], v[1])] &= std::uint8_t(~(1u << dir));
                    --edges;
                    v = {v[0] + kDx[dir], v[1] + kDy[dir]};
                    // tight turn: left, straight, right
                    int next = -1;
                    for (int t : {1, 0, 3}) {
                        const int cand = (dir + t) % 4;
                        if (v == start && cand == start_dir) break;
                        if (out[vid(v[0], v[1])] & (1u << cand)) { next = cand; break; }
                    }
                    if (next < 0) {
                        if (v != start) throw ContractViolation("jordan_decompose: open boundary walk");
                        break;
                    }
                    dir = next;
                }
                raw.push_back(std::move(walk));
            }
        }

    // split walks at repeated vertices so every cycle is simple
    for (auto& walk : raw) {
        std::vector<Vertex> stack;
        std::unordered_map<std::size_t, std::size_t> pos;
        auto emit = [&](std::vector<Vertex> cyc) {
            BoundaryCycle c;
            c.vertices = std::move(cyc);
            c.twice_area = shoelace(c.vertices);
            c.sign = c.twice_area > 0 ? +1 : -1;
            c.length = double(c.vertices.size()) * h;
            d.cycles.push_back(std::move(c));
        };
        for (const Vertex& v : walk) {
            const std::size_t key = vid(v[0], v[1]);
            auto it = pos.find(key);
            if (it != pos.end()) {
                std::vector<Vertex> sub(stack.begin() + std::ptrdiff_t(it->second), stack.end());
                for (std::size_t k = it->second + 1; k < stack.size(); ++k) pos.erase(vid(stack[k][0], stack[k][1]));
                stack.resize(it->second + 1);
                emit(std::move(sub));
            } else {
                pos[key] = stack.size();
                stack.push_back(v);
            }
        }
        emit(std::move(stack));
    }

    for (const auto& c : d.cycles)
        if (c.twice_area == 0) throw ContractViolation("jordan_decompose: degenerate cycle");

    // nesting: paint interiors from the largest area down
    std::vector<int> order(d.cycles.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(d.cycles[std::size_t(a)].twice_area) > std::abs(d.cycles[std::size_t(b)].twice_area);
    });
    d.innermost.assign(std::size_t(g.size()), -1);
    for (int k : order) {
        auto& c = d.cycles[std::size_t(k)];
        const auto cells = cycle_interior_cells(g, c);
        if (std::int64_t(cells.size()) * 2 != std::abs(c.twice_area))
            throw ContractViolation("jordan_decompose: cycle is not simple");
        const std::int32_t parent = d.innermost[std::size_t(cells.front())];
        for (Index i : cells) {
            if (d.innermost[std::size_t(i)] != parent)
                throw ContractViolation("jordan_decompose: cycle interiors neither nested nor disjoint");
            d.innermost[std::size_t(i)] = std::int32_t(k);
        }
        c.parent = parent;
        c.depth = parent < 0 ? 0 : d.cycles[std::size_t(parent)].depth + 1;
        if (parent < 0 ? c.sign != +1 : d.cycles[std::size_t(parent)].sign == c.sign)
            throw ContractViolation("jordan_decompose: cycle signs do not alternate");
    }

    std::vector<int> part_of(d.cycles.size(), -1);
    for (std::size_t k = 0; k < d.cycles.size(); ++k) {
        if (d.cycles[k].sign > 0) {
            part_of[k] = int(d.plus_cycles.size());
            d.plus_cycles.push_back(int(k));
        } else {
            d.minus_cycles.push_back(int(k));
        }
    }
    d.parts.resize(d.plus_cycles.size());
    for (Index i = 0; i < g.size(); ++i) {
        const std::int32_t k = d.innermost[std::size_t(i)];
        const bool in_part = k >= 0 && d.cycles[std::size_t(k)].sign > 0;
        if (in_part != e.test(i)) throw ContractViolation("jordan_decompose: parts do not reproduce the set");
        if (in_part) d.parts[std::size_t(part_of[std::size_t(k)])].push_back(i);
    }

    // perimeter = sum of cycle lengths
    if (d.total_length() != perimeter(e)) throw ContractViolation("jordan_decompose: cycle lengths do not sum to the perimeter");
    return d;
}

std::string cycles_json(const JordanDecomposition& d) {
    std::ostringstream out;
    out << "{\"cycles\":[";
    for (std::size_t k = 0; k < d.cycles.size(); ++k) {
        const auto& c = d.cycles[k];
        if (k) out << ',';
        out << "{\"sign\":" << c.sign << ",\"length\":" << c.length << ",\"depth\":" << c.depth
            << ",\"parent\":" << c.parent << ",\"vertices\":[";
        for (std::size_t i = 0; i < c.vertices.size(); ++i)
            out << (i ? "," : "") << '[' << c.vertices[i][0] << ',' << c.vertices[i][1] << ']';
        out << "]}";
    }
    out << "]}";
    return out.str();
}

std::string cycles_svg(const JordanDecomposition& d) {
    const Grid& g = d.set.grid();
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << g.cells[0] << ' ' << g.cells[1] << "\">\n";
    for (Index i = 0; i < g.size(); ++i)
        if (d.set.test(i)) {
            const Coord c = g.coords(i);
            out << "<rect x=\"" << c[0] << "\" y=\"" << g.cells[1] - 1 - c[1] << "\" width=\"1\" height=\"1\" fill=\"#ddd\"/>\n";
        }
    for (const auto& c : d.cycles) {
        out << "<polygon fill=\"none\" stroke-width=\"0.2\" stroke=\"" << (c.sign > 0 ? "#c00" : "#00c") << "\" points=\"";
        for (const Vertex& v : c.vertices) out << v[0] << ',' << g.cells[1] - v[1] << ' ';
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gmt
