#include "gmt/components.hpp"

#include <algorithm>

#include "gmt/errors.hpp"
#include "gmt/measure.hpp"

namespace gmt {
namespace {

std::vector<std::vector<Index>> flood(const CellSet& s) {
    const Grid& g = s.grid();
    std::vector<std::int32_t> seen(std::size_t(g.size()), 0);
    std::vector<std::vector<Index>> out;
    std::vector<Index> stack;
    for (Index i = 0; i < g.size(); ++i) {
        if (!s.test(i) || seen[std::size_t(i)]) continue;
        std::vector<Index> comp;
        stack.push_back(i);
        seen[std::size_t(i)] = 1;
        while (!stack.empty()) {
            const Index p = stack.back();
            stack.pop_back();
            comp.push_back(p);
            for_each_face_neighbor(g, p, [&](Index q) {
                if (s.test(q) && !seen[std::size_t(q)]) {
                    seen[std::size_t(q)] = 1;
                    stack.push_back(q);
                }
            });
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::vector<std::vector<Index>> face_components(const CellSet& s) { return flood(s); }

CellSet ComponentLabeling::component_set(std::size_t k) const {
    CellSet s(grid);
    for (Index i : components.at(k)) s.set(i);
    return s;
}

CellSet ComponentLabeling::component_closure(std::size_t k) const {
    CellSet s(grid);
    for (Index i : components.at(k)) {
        s.set(i);
        for_each_full_neighbor(grid, i, [&](Index n) { s.set(n); });
    }
    return s;
}

ComponentLabeling complement_components(const CellSet& omega) {
    if (omega.empty()) throw InvalidInput("complement_components: empty domain");
    const Grid& g = omega.grid();
    ComponentLabeling out;
    out.grid = g;
    out.omega = omega;
    out.components = flood(closure(omega).complement());
    std::stable_sort(out.components.begin(), out.components.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });

    out.label.assign(std::size_t(g.size()), -1);
    for (std::size_t k = 0; k < out.components.size(); ++k)
        for (Index i : out.components[k]) out.label[std::size_t(i)] = std::int32_t(k);

    out.unbounded.resize(out.components.size(), false);
    out.boundary_faces.resize(out.components.size());
    for (std::size_t k = 0; k < out.components.size(); ++k) {
        for (Index i : out.components[k]) {
            if (g.on_frame(i)) out.unbounded[k] = true;
            for_each_face_neighbor(g, i, [&](Index q) {
                if (out.label[std::size_t(q)] != std::int32_t(k)) out.boundary_faces[k].push_back({i, q, g.face_area()});
            });
        }
    }

    out.closure_label.assign(std::size_t(g.size()), -1);
    std::vector<std::int32_t> owners(std::size_t(g.size()), 0);
    for (std::size_t k = 0; k < out.components.size(); ++k) {
        for (Index i : out.components[k]) {
            for_each_full_neighbor(g, i, [&](Index n) {
                if (out.label[std::size_t(n)] >= 0) return;
                auto& cl = out.closure_label[std::size_t(n)];
                if (cl == std::int32_t(k)) return;
                if (cl < 0) {
                    cl = std::int32_t(k);
                    owners[std::size_t(n)] = 1;
                } else {
                    // components are visited in order, so cl < k already
                    if (owners[std::size_t(n)] == 1) ++out.shared_closure_cells;
                    owners[std::size_t(n)] = 2;
                }
            });
        }
    }
    return out;
}

}  // namespace gmt
