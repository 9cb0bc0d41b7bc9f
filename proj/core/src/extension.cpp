#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "gmt/errors.hpp"
#include "gmt/measure.hpp"
#include "gmt/planar.hpp"
#include "paths_detail.hpp"

namespace gmt {
namespace {

using Membership = std::function<bool(Index)>;

struct Context {
    Context(const CellSet& omega_, const ComponentLabeling& lab_)
        : g(omega_.grid()), omega(omega_), lab(lab_), search(g) {
        owner.assign(std::size_t(g.size()), -1);
        for (Index i = 0; i < g.size(); ++i) {
            if (omega.test(i)) continue;
            const std::int32_t l = lab.label[std::size_t(i)];
            owner[std::size_t(i)] = l >= 0 ? l : lab.closure_label[std::size_t(i)];
        }
    }

    bool component_cell(Index i, int comp) const { return lab.label[std::size_t(i)] == comp; }
    bool ring_cell(Index i, int comp) const {
        return owner[std::size_t(i)] == comp && lab.label[std::size_t(i)] < 0;
    }

    const Grid& g;
    const CellSet& omega;
    const ComponentLabeling& lab;
    std::vector<std::int32_t> owner;
    detail::PathSearch search;
};

struct EdgeInfo {
    int comp = -1;
    int kind = 0;
    Index contact = -1;
};

struct Edit {
    std::vector<Index> add;
    std::vector<Index> remove;
    std::vector<ArcReport> arcs;
};

// Cells to the left and right of a directed unit edge.
std::pair<Coord, Coord> edge_cells(const Vertex& a, const Vertex& b) {
    const int dx = b[0] - a[0], dy = b[1] - a[1];
    if (dx == 1) return {{a[0], a[1], 0}, {a[0], a[1] - 1, 0}};
    if (dy == 1) return {{a[0] - 1, a[1], 0}, {a[0], a[1], 0}};
    if (dx == -1) return {{a[0] - 1, a[1] - 1, 0}, {a[0] - 1, a[1], 0}};
    return {{a[0], a[1] - 1, 0}, {a[0] - 1, a[1] - 1, 0}};
}

bool chebyshev_adjacent(const Grid& g, Index a, Index b) {
    const Coord p = g.coords(a), q = g.coords(b);
    return std::abs(p[0] - q[0]) <= 1 && std::abs(p[1] - q[1]) <= 1;
}

// Cells strictly enclosed by an 8-connected closed chain of wall cells.
std::vector<Index> enclosed_cells(const Grid& g, const std::vector<Index>& wall) {
    if (wall.empty()) return {};
    Coord lo{g.cells[0], g.cells[1], 0}, hi{-1, -1, 0};
    for (Index i : wall) {
        const Coord c = g.coords(i);
        for (int a = 0; a < 2; ++a) {
            lo[a] = std::min(lo[a], c[a] - 1);
            hi[a] = std::max(hi[a], c[a] + 1);
        }
    }
    for (int a = 0; a < 2; ++a) {
        lo[a] = std::max(lo[a], 0);
        hi[a] = std::min(hi[a], g.cells[a] - 1);
    }
    const int w = hi[0] - lo[0] + 1, h = hi[1] - lo[1] + 1;
    std::vector<std::uint8_t> mark(std::size_t(w) * std::size_t(h), 0);  // 1 wall, 2 reached
    auto at = [&](int x, int y) -> std::uint8_t& { return mark[std::size_t(x - lo[0]) + std::size_t(w) * std::size_t(y - lo[1])]; };
    for (Index i : wall) {
        const Coord c = g.coords(i);
        at(c[0], c[1]) = 1;
    }
    std::vector<std::pair<int, int>> stack;
    auto seed = [&](int x, int y) {
        if (at(x, y) == 0) {
            at(x, y) = 2;
            stack.push_back({x, y});
        }
    };
    for (int x = lo[0]; x <= hi[0]; ++x) {
        seed(x, lo[1]);
        seed(x, hi[1]);
    }
    for (int y = lo[1]; y <= hi[1]; ++y) {
        seed(lo[0], y);
        seed(hi[0], y);
    }
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        if (x > lo[0]) seed(x - 1, y);
        if (x < hi[0]) seed(x + 1, y);
        if (y > lo[1]) seed(x, y - 1);
        if (y < hi[1]) seed(x, y + 1);
    }
    std::vector<Index> out;
    for (int y = lo[1]; y <= hi[1]; ++y)
        for (int x = lo[0]; x <= hi[0]; ++x)
            if (at(x, y) == 0) out.push_back(g.index(x, y));
    return out;
}

class PieceExtender {
public:
    PieceExtender(Context& ctx, const Membership& in_d) : ctx_(ctx), in_d_(in_d) {}

    Edit run(const BoundaryCycle& cycle) {
        const Grid& g = ctx_.g;
        const std::size_t m = cycle.vertices.size();
        std::vector<EdgeInfo> info(m);
        std::unordered_map<int, std::size_t> per_comp;
        for (std::size_t k = 0; k < m; ++k) {
            const auto [lc, rc] = edge_cells(cycle.vertices[k], cycle.vertices[(k + 1) % m]);
            if (!g.inside(lc) || !g.inside(rc)) continue;
            const Index p = g.index(lc), q = g.index(rc);
            const bool p_in = ctx_.omega.test(p), q_in = ctx_.omega.test(q);
            // the piece lies left of a plus cycle and right of a minus cycle
            if (p_in && !q_in && ctx_.owner[std::size_t(q)] >= 0) {
                info[k] = {ctx_.owner[std::size_t(q)], cycle.sign, q};
            } else if (!p_in && q_in && ctx_.owner[std::size_t(p)] >= 0) {
                info[k] = {ctx_.owner[std::size_t(p)], -cycle.sign, p};
            }
            if (info[k].comp >= 0) ++per_comp[info[k].comp];
        }

        std::vector<int> comps;
        for (const auto& [c, n] : per_comp)
            if (n >= 2) comps.push_back(c);
        std::sort(comps.begin(), comps.end());
        for (int comp : comps)
            for (int kind : {+1, -1}) arcs_for(info, comp, kind);
        return std::move(edit_);
    }

private:
    void arcs_for(const std::vector<EdgeInfo>& info, int comp, int kind) {
        const std::size_t m = info.size();
        std::vector<bool> marked(m);
        std::size_t count = 0;
        for (std::size_t k = 0; k < m; ++k) {
            marked[k] = info[k].comp == comp && info[k].kind == kind;
            count += marked[k];
        }
        if (count == 0) return;
        if (count == m) {
            std::vector<Index> contacts;
            for (const auto& e : info)
                if (contacts.empty() || contacts.back() != e.contact) contacts.push_back(e.contact);
            closed_arc(contacts, comp, kind, m);
            return;
        }
        std::size_t s = 0;
        while (!(marked[s] && !marked[(s + m - 1) % m])) ++s;
        std::size_t k = 0;
        while (k < m) {
            if (!marked[(s + k) % m]) {
                ++k;
                continue;
            }
            // greedy growth while the overlap fraction stays at least one half
            std::size_t hits = 0, last = k;
            for (std::size_t t = k; t < m; ++t) {
                if (marked[(s + t) % m]) ++hits;
                if (2 * hits < t - k + 1) break;
                if (marked[(s + t) % m]) last = t;
            }
            std::vector<Index> contacts;
            std::size_t overlap = 0;
            for (std::size_t t = k; t <= last; ++t) {
                const auto& e = info[(s + t) % m];
                if (!marked[(s + t) % m]) continue;
                ++overlap;
                if (contacts.empty() || contacts.back() != e.contact) contacts.push_back(e.contact);
            }
            ArcReport rep;
            rep.component = comp;
            rep.kind = kind;
            rep.arc_faces = last - k + 1;
            rep.overlap_faces = overlap;
            open_arc(contacts, comp, kind, rep);
            k = last + 1;
        }
    }

    std::vector<Index> wall(const std::vector<Index>& contacts, int comp, bool& ok) {
        std::vector<Index> w{contacts.front()};
        for (std::size_t t = 1; t < contacts.size(); ++t) {
            const Index a = w.back(), b = contacts[t];
            if (a == b) continue;
            if (chebyshev_adjacent(ctx_.g, a, b)) {
                w.push_back(b);
                continue;
            }
            auto path = ctx_.search.run(a, b, [&](Index i) { return ctx_.ring_cell(i, comp); });
            if (!path)
                path = ctx_.search.run(a, b, [&](Index i) { return ctx_.owner[std::size_t(i)] == comp; });
            if (!path) {
                ok = false;
                return w;
            }
            w.insert(w.end(), path->begin() + 1, path->end());
        }
        return w;
    }

    bool foreign(Index i, int comp) const { return ctx_.omega.test(i) || ctx_.owner[std::size_t(i)] != comp; }

    // A cell outside omega whose omega face-neighbours all have the wrong state.
    bool bad(Index i, int kind) const {
        const bool want = kind > 0;
        bool any = false, all_wrong = true;
        for_each_face_neighbor(ctx_.g, i, [&](Index q) {
            if (!ctx_.omega.test(q)) return;
            any = true;
            if (in_d_(q) == want) all_wrong = false;
        });
        return any && all_wrong;
    }

    void open_arc(const std::vector<Index>& contacts, int comp, int kind, ArcReport rep) {
        bool ok = true;
        const std::vector<Index> w = wall(contacts, comp, ok);
        std::vector<Index> gamma;
        double gamma_len = 0.0;
        if (ok && w.size() > 1) {
            auto path = ctx_.search.run(w.front(), w.back(), [&](Index i) { return ctx_.component_cell(i, comp); }, &gamma_len);
            if (path)
                gamma = std::move(*path);
            else
                ok = false;
        }
        std::vector<Index> loop = w;
        loop.insert(loop.end(), gamma.begin(), gamma.end());
        std::vector<Index> inside;
        if (ok) {
            inside = enclosed_cells(ctx_.g, loop);
            for (Index i : inside)
                if (foreign(i, comp)) {
                    ok = false;
                    break;
                }
        }
        if (!ok) {
            if (contacts.size() < 2) return;
            const std::size_t mid = contacts.size() / 2;
            ArcReport half = rep;
            open_arc({contacts.begin(), contacts.begin() + std::ptrdiff_t(mid)}, comp, kind, half);
            open_arc({contacts.begin() + std::ptrdiff_t(mid), contacts.end()}, comp, kind, half);
            return;
        }

        std::unordered_set<Index> region(loop.begin(), loop.end());
        region.insert(inside.begin(), inside.end());

        // carve pockets: runs of wall cells that face only wrong-state omega cells
        std::size_t t = 0;
        while (t < w.size()) {
            if (!bad(w[t], kind)) {
                ++t;
                continue;
            }
            std::size_t r1 = t;
            while (r1 + 1 < w.size() && bad(w[r1 + 1], kind)) ++r1;
            std::vector<Index> run(w.begin() + std::ptrdiff_t(t), w.begin() + std::ptrdiff_t(r1) + 1);
            std::vector<Index> carved = run;
            if (t > 0 && r1 + 1 < w.size()) {
                const Index a = w[t - 1], b = w[r1 + 1];
                auto path = ctx_.search.run(a, b, [&](Index i) { return ctx_.component_cell(i, comp); });
                if (path) {
                    std::vector<Index> loop2 = run;
                    loop2.insert(loop2.end(), path->begin(), path->end());
                    const auto enc = enclosed_cells(ctx_.g, loop2);
                    bool clean = true;
                    for (Index i : enc)
                        if (foreign(i, comp)) clean = false;
                    if (clean)
                        for (Index i : enc)
                            if (region.count(i)) carved.push_back(i);
                }
            }
            for (Index i : carved) region.erase(i);
            rep.carved_cells += Index(carved.size());
            ++rep.pockets;
            t = r1 + 1;
        }
        std::vector<Index> cells(region.begin(), region.end());
        std::sort(cells.begin(), cells.end());
        // remaining cells that would still add boundary on omega
        std::erase_if(cells, [&](Index i) { return bad(i, kind); });

        rep.region_cells = Index(cells.size());
        rep.gamma_length = gamma_len * ctx_.g.spacing();
        const Coord a = ctx_.g.coords(w.front()), b = ctx_.g.coords(w.back());
        rep.chord = std::hypot(double(a[0] - b[0]), double(a[1] - b[1])) * ctx_.g.spacing();
        apply(cells, kind);
        edit_.arcs.push_back(rep);
    }

    void closed_arc(const std::vector<Index>& contacts, int comp, int kind, std::size_t faces) {
        std::unordered_set<Index> region(contacts.begin(), contacts.end());
        // a removal empties the whole closure, which the piece then no longer meets
        const std::vector<Index>& around = kind < 0 ? ctx_.lab.components[std::size_t(comp)] : contacts;
        if (kind < 0) region.insert(around.begin(), around.end());
        for (Index c : around)
            for_each_full_neighbor(ctx_.g, c, [&](Index n) {
                if (!ctx_.omega.test(n) && ctx_.owner[std::size_t(n)] == comp) region.insert(n);
            });
        std::vector<Index> cells(region.begin(), region.end());
        std::sort(cells.begin(), cells.end());
        std::erase_if(cells, [&](Index i) { return bad(i, kind); });
        ArcReport rep;
        rep.component = comp;
        rep.kind = kind;
        rep.arc_faces = faces;
        rep.overlap_faces = faces;
        rep.closed = true;
        rep.region_cells = Index(cells.size());
        apply(cells, kind);
        edit_.arcs.push_back(rep);
    }

    void apply(const std::vector<Index>& cells, int kind) {
        for (Index i : cells) {
            if (ctx_.omega.test(i)) throw ContractViolation("extension region touches the domain");
            if (kind > 0 && !in_d_(i)) edit_.add.push_back(i);
            if (kind < 0 && in_d_(i)) edit_.remove.push_back(i);
        }
    }

    Context& ctx_;
    const Membership& in_d_;
    Edit edit_;
};

ExtensionResult finish(const CellSet& e, const CellSet& omega, CellSet extended, std::vector<ArcReport> arcs) {
    for (Index i = 0; i < omega.size(); ++i)
        if (omega.test(i) && extended.test(i) != e.test(i))
            throw ContractViolation("PE1 violated: extension changed the set inside the domain");
    ExtensionResult r;
    r.perimeter_in = perimeter(e, omega);
    r.perimeter_out = perimeter(extended);
    r.overlap_length = boundary_overlap(extended, omega);
    if (r.perimeter_in > 0.0)
        r.constant = r.perimeter_out / r.perimeter_in;
    else
        r.constant = r.perimeter_out == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    r.extended = std::move(extended);
    r.arcs = std::move(arcs);
    return r;
}

}  // namespace

double boundary_overlap(const CellSet& extended, const CellSet& omega) {
    require_same(extended.grid(), omega.grid(), "boundary_overlap");
    const Grid& g = omega.grid();
    Index n = 0;
    for_each_face(g, [&](Index p, Index q, int) {
        if (extended.test(p) != extended.test(q) && omega.test(p) != omega.test(q)) ++n;
    });
    return double(n) * g.face_area();
}

ExtensionResult strong_perimeter_extend_jordan(const CellSet& e, const CellSet& omega, const ComponentLabeling& labeling) {
    require_same(e.grid(), omega.grid(), "strong_perimeter_extend_jordan");
    require_same(e.grid(), labeling.grid, "strong_perimeter_extend_jordan");
    const JordanDecomposition jd = jordan_decompose(e);
    if (jd.cycles.size() != 1 || jd.plus_cycles.size() != 1) {
        const std::size_t extra = jd.cycles.size() > 1 ? 1 : 0;
        throw InvalidInput("strong_perimeter_extend_jordan: not a Jordan domain (extra " +
                           std::string(jd.cycles.size() > 1 && jd.cycles[extra].sign < 0 ? "minus" : "plus") +
                           " cycle " + std::to_string(extra) + " of " + std::to_string(jd.cycles.size()) + ")");
    }
    Context ctx(omega, labeling);
    const Membership in_d = [&](Index i) { return e.test(i); };
    Edit edit = PieceExtender(ctx, in_d).run(jd.cycles.front());
    CellSet out = e;
    for (Index i : edit.add) out.set(i, true);
    for (Index i : edit.remove) out.set(i, false);
    return finish(e, omega, std::move(out), std::move(edit.arcs));
}

ExtensionResult strong_perimeter_extend_set(const CellSet& e, const CellSet& omega, const CellSet& baseline) {
    require_same(e.grid(), omega.grid(), "strong_perimeter_extend_set");
    require_same(e.grid(), baseline.grid(), "strong_perimeter_extend_set");
    if (!((baseline & omega) == e)) throw ContractViolation("strong_perimeter_extend_set: baseline does not restrict to the set");
    const Grid& g = e.grid();
    if (baseline.empty()) return finish(e, omega, baseline, {});

    const JordanDecomposition jd = jordan_decompose(baseline);
    const ComponentLabeling lab = complement_components(omega);
    Context ctx(omega, lab);

    auto inside_cycle = [&](Index i, int k) {
        for (int m = jd.innermost[std::size_t(i)]; m >= 0; m = jd.cycles[std::size_t(m)].parent)
            if (m == k) return true;
        return false;
    };

    // per-cell overrides: (piece, membership)
    std::unordered_map<Index, std::vector<std::pair<int, bool>>> overrides;
    std::vector<ArcReport> arcs;
    for (std::size_t k = 0; k < jd.cycles.size(); ++k) {
        const Membership in_d = [&, k](Index i) { return inside_cycle(i, int(k)); };
        Edit edit = PieceExtender(ctx, in_d).run(jd.cycles[k]);
        for (Index i : edit.add) overrides[i].push_back({int(k), true});
        for (Index i : edit.remove) overrides[i].push_back({int(k), false});
        arcs.insert(arcs.end(), edit.arcs.begin(), edit.arcs.end());
    }

    CellSet out = baseline;
    for (const auto& [cell, list] : overrides) {
        std::unordered_map<int, bool> member;
        for (int m = jd.innermost[std::size_t(cell)]; m >= 0; m = jd.cycles[std::size_t(m)].parent) member[m] = true;
        for (const auto& [k, v] : list) member[k] = v;
        bool in = false;
        for (const auto& [j, mj] : member) {
            if (!mj || jd.cycles[std::size_t(j)].sign < 0) continue;
            bool cut = false;
            for (const auto& [k, mk] : member)
                if (mk && jd.cycles[std::size_t(k)].sign < 0 && jd.cycles[std::size_t(k)].parent == j) cut = true;
            if (!cut) {
                in = true;
                break;
            }
        }
        out.set(cell, in);
    }
    (void)g;
    return finish(e, omega, std::move(out), std::move(arcs));
}

CellSet filled_baseline(const CellSet& e, const CellSet& omega, const ComponentLabeling& labeling) {
    require_same(e.grid(), omega.grid(), "filled_baseline");
    const Grid& g = e.grid();
    const Context ctx(omega, labeling);
    std::vector<Index> with(labeling.count(), 0), without(labeling.count(), 0);
    for_each_face(g, [&](Index p, Index q, int) {
        if (omega.test(p) == omega.test(q)) return;
        const Index in = omega.test(p) ? p : q, out = omega.test(p) ? q : p;
        const int k = ctx.owner[std::size_t(out)];
        if (k < 0) return;
        (e.test(in) ? with : without)[std::size_t(k)]++;
    });
    CellSet out = e;
    for (Index i = 0; i < g.size(); ++i) {
        const int k = ctx.owner[std::size_t(i)];
        if (k >= 0 && !labeling.unbounded[std::size_t(k)] && with[std::size_t(k)] > without[std::size_t(k)]) out.set(i);
    }
    return out;
}

HSetReport hset_report(const CellSet& omega, const ComponentLabeling& labeling) {
    require_same(omega.grid(), labeling.grid, "hset_report");
    const Grid& g = omega.grid();
    if (g.dim != 2) throw InvalidInput("hset_report: planar domains only");
    HSetReport r;
    r.hset = CellSet(g);
    const CellSet ring = outer_boundary(omega);
    for (Index i = 0; i < g.size(); ++i)
        if (ring.test(i) && labeling.label[std::size_t(i)] < 0 && labeling.closure_label[std::size_t(i)] < 0) r.hset.set(i);
    Index faces = 0;
    for_each_face(g, [&](Index p, Index q, int) {
        if (omega.test(p) == omega.test(q)) return;
        if (r.hset.test(p) || r.hset.test(q)) ++faces;
    });
    r.length_estimate = double(faces) * g.spacing() / 2.0;
    return r;
}

ClosureContacts closure_contacts(const ComponentLabeling& labeling) {
    const Grid& g = labeling.grid;
    // cells in two or more closures, with the set of owners
    std::unordered_map<Index, std::vector<int>> owners;
    for (std::size_t k = 0; k < labeling.components.size(); ++k)
        for (Index i : labeling.components[k])
            for_each_full_neighbor(g, i, [&](Index n) {
                if (labeling.label[std::size_t(n)] >= 0) return;
                auto& v = owners[n];
                if (std::find(v.begin(), v.end(), int(k)) == v.end()) v.push_back(int(k));
            });
    std::map<std::pair<int, int>, std::vector<Index>> shared;
    for (const auto& [cell, v] : owners)
        for (std::size_t a = 0; a < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b) shared[{std::min(v[a], v[b]), std::max(v[a], v[b])}].push_back(cell);
    ClosureContacts out;
    for (auto& [pair, cells] : shared) {
        ++out.touching_pairs;
        std::unordered_set<Index> left(cells.begin(), cells.end());
        int clusters = 0;
        while (!left.empty()) {
            ++clusters;
            std::vector<Index> stack{*left.begin()}, members;
            left.erase(stack.back());
            while (!stack.empty()) {
                const Index p = stack.back();
                stack.pop_back();
                members.push_back(p);
                for_each_full_neighbor(g, p, [&](Index n) {
                    if (left.erase(n)) stack.push_back(n);
                });
            }
            Coord lo{g.cells[0], g.cells[1], 0}, hi{-1, -1, 0};
            for (Index m : members) {
                const Coord c = g.coords(m);
                for (int a = 0; a < 2; ++a) {
                    lo[a] = std::min(lo[a], c[a]);
                    hi[a] = std::max(hi[a], c[a]);
                }
            }
            const double diam = std::hypot(hi[0] - lo[0] + 1.0, hi[1] - lo[1] + 1.0) * g.spacing();
            out.max_cluster_diameter = std::max(out.max_cluster_diameter, diam);
        }
        out.max_clusters_per_pair = std::max(out.max_clusters_per_pair, clusters);
    }
    return out;
}

}  // namespace gmt
