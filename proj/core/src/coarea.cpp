#include "gmt/coarea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "gmt/errors.hpp"
#include "gmt/measure.hpp"
#include "gmt/parallel.hpp"
#include "gmt/whitney.hpp"

namespace gmt {
namespace {

std::vector<double> distinct_values(const GridFunction& u, const CellSet* region) {
    std::vector<double> v;
    v.reserve(std::size_t(u.size()));
    for (Index i = 0; i < u.size(); ++i)
        if (!region || region->test(i)) v.push_back(u[i]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

CoareaCheck coarea_impl(const GridFunction& u, const CellSet* region) {
    const std::vector<double> t = distinct_values(u, region);
    const double tv = region ? total_variation_value(u, *region) : total_variation_value(u);
    const Index levels = Index(t.size()) - 1;
    const double integral = parallel_sum(levels, 1, [&](Index k0, Index k1) {
        double acc = 0.0;
        for (Index k = k0; k < k1; ++k) {
            const CellSet e = superlevel(u, t[std::size_t(k)]);
            const double p = region ? perimeter(e, *region) : perimeter(e);
            acc += (t[std::size_t(k + 1)] - t[std::size_t(k)]) * p;
        }
        return acc;
    });
    const double scale = std::max(std::abs(tv), std::abs(integral));
    return {tv, integral, scale > 0.0 ? std::abs(tv - integral) / scale : 0.0};
}

}  // namespace

CellSet superlevel(const GridFunction& u, double t) {
    CellSet s(u.grid());
    for (Index i = 0; i < u.size(); ++i) s.set(i, u[i] > t);
    return s;
}

CoareaCheck coarea_check(const GridFunction& u) { return coarea_impl(u, nullptr); }

CoareaCheck coarea_check(const GridFunction& u, const CellSet& region) {
    require_same(u.grid(), region.grid(), "coarea_check");
    return coarea_impl(u, &region);
}

double LevelProfile::perimeter_at(double s) const {
    // largest threshold <= s; below the first threshold the set is the whole region
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), s);
    if (it == thresholds.begin()) return 0.0;
    return perimeters[std::size_t(std::distance(thresholds.begin(), it) - 1)];
}

double LevelProfile::integral(double a, double b) const {
    if (!(b > a)) return 0.0;
    double acc = 0.0;
    double s = a;
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), a);
    while (s < b) {
        const double next = (it == thresholds.end()) ? b : std::min(b, *it);
        acc += (next - s) * perimeter_at(s);
        s = next;
        if (it != thresholds.end()) ++it;
    }
    return acc;
}

LevelProfile level_profile(const GridFunction& u, const CellSet& region) {
    require_same(u.grid(), region.grid(), "level_profile");
    LevelProfile p;
    p.region = region;
    p.thresholds = distinct_values(u, &region);
    p.perimeters.assign(p.thresholds.size(), 0.0);
    parallel_blocks(Index(p.thresholds.size()), 1, [&](Index k0, Index k1) {
        for (Index k = k0; k < k1; ++k)
            p.perimeters[std::size_t(k)] = perimeter(superlevel(u, p.thresholds[std::size_t(k)]), region);
    });
    return p;
}

bool satisfies_selection_inequality(const LevelProfile& profile, int depth, double t) {
    const double len = std::ldexp(1.0, -depth);
    const double j = std::floor(t / len);
    const double a = j * len;
    return profile.perimeter_at(t) <= std::ldexp(1.0, depth + 1) * profile.integral(a, a + len);
}

std::vector<bool> selection_flags(const LevelProfile& profile, int depth) {
    const std::size_t n = std::size_t(1) << depth;
    const double len = std::ldexp(1.0, -depth);
    std::vector<bool> good(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = double(j) * len, b = a + len;
        for (double t : profile.thresholds)
            if (t >= a && t < b && satisfies_selection_inequality(profile, depth, t)) {
                good[j] = true;
                break;
            }
    }
    return good;
}

LevelSelection select_levels(const GridFunction& u, const CellSet& omega, int depth, const Extender& extender,
                             const std::vector<double>& collar_widths) {
    require_same(u.grid(), omega.grid(), "select_levels");
    if (depth < 0 || depth > 20) throw InvalidInput("select_levels: depth out of range");
    for (Index i = 0; i < u.size(); ++i)
        if (omega.test(i) && (u[i] < 0.0 || u[i] > 1.0)) throw InvalidInput("select_levels: u must take values in [0,1] on the domain");

    const LevelProfile profile = level_profile(u, omega);
    std::optional<CellSet> collar;
    if (!collar_widths.empty()) {
        const double finest = *std::min_element(collar_widths.begin(), collar_widths.end());
        if (!(finest >= 2.0 * u.grid().spacing())) throw ScaleError("select_levels: collar width below 2h");
        collar = Collar(omega).cells(finest);
    }
    auto collar_perimeter = [&](const CellSet& e) {
        if (!collar) return 0.0;
        return total_variation(GridFunction::indicator(e)).measure.restrict(*collar).total();
    };
    auto level_set = [&](double t) { return superlevel(u, t) & omega; };

    const std::size_t n = std::size_t(1) << depth;
    const double len = std::ldexp(1.0, -depth);
    LevelSelection sel;
    sel.depth = depth;
    sel.chosen.resize(n);
    sel.good.assign(n, false);
    sel.sampled.assign(n, false);
    sel.collar_budget.assign(n, 0.0);
    sel.extended.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        const double a = double(j) * len, b = a + len, mid = a + len / 2;
        std::vector<double> cand;
        for (double t : profile.thresholds)
            if (t >= a && t < b) cand.push_back(t);
        sel.sampled[j] = !cand.empty();
        cand.push_back(mid);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        bool found = false;
        double best = std::numeric_limits<double>::infinity();
        for (double t : cand) {
            if (!satisfies_selection_inequality(profile, depth, t)) continue;
            CellSet ext = extender(level_set(t));
            require_same(ext.grid(), u.grid(), "extender output");
            const double cp = collar_perimeter(ext);
            if (!found || cp < best) {
                found = true;
                best = cp;
                sel.chosen[j] = t;
                sel.extended[j] = std::move(ext);
            }
            if (!collar) break;
        }
        sel.good[j] = found;
        if (!found) {
            sel.chosen[j] = mid;
            sel.extended[j] = level_set(mid);
            best = collar_perimeter(sel.extended[j]);
        }
        sel.collar_budget[j] = best;
    }
    return sel;
}

GridFunction assemble_extension(const LevelSelection& selection, const std::vector<CellSet>& extended_sets) {
    if (extended_sets.size() != selection.intervals())
        throw ContractViolation("assemble_extension: one extended set per interval is required");
    if (extended_sets.empty()) throw ContractViolation("assemble_extension: no intervals");
    const Grid& g = extended_sets.front().grid();
    const double w = std::ldexp(1.0, -selection.depth);
    GridFunction um(g);
    for (const CellSet& e : extended_sets) {
        require_same(e.grid(), g, "assemble_extension");
        for (Index i = 0; i < g.size(); ++i)
            if (e.test(i)) um[i] += w;
    }
    return um;
}

GridFunction assemble_extension(const LevelSelection& selection) {
    return assemble_extension(selection, selection.extended);
}

std::string profile_csv(const LevelProfile& profile) {
    std::ostringstream out;
    out.precision(17);
    out << "threshold,perimeter\n";
    for (std::size_t k = 0; k < profile.thresholds.size(); ++k)
        out << profile.thresholds[k] << ',' << profile.perimeters[k] << '\n';
    return out.str();
}

std::string selection_csv(const LevelSelection& selection) {
    std::ostringstream out;
    out.precision(17);
    out << "interval,threshold,good,sampled,collar_budget\n";
    for (std::size_t j = 0; j < selection.intervals(); ++j)
        out << j << ',' << selection.chosen[j] << ',' << int(selection.good[j]) << ',' << int(selection.sampled[j]) << ','
            << selection.collar_budget[j] << '\n';
    return out.str();
}

}  // namespace gmt
