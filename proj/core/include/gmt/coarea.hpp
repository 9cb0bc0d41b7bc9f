#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

// Cells with u > t.
CellSet superlevel(const GridFunction& u, double t);

struct CoareaCheck {
    double tv = 0.0;
    double integral = 0.0;
    double rel_err = 0.0;
};

// Both sides of TV(u, R) = sum_k (t_{k+1} - t_k) P({u > t_k}, R) over the
// distinct values t_k of u.
CoareaCheck coarea_check(const GridFunction& u);
CoareaCheck coarea_check(const GridFunction& u, const CellSet& region);

struct LevelProfile {
    std::vector<double> thresholds;  // strictly ascending
    std::vector<double> perimeters;  // P({u > t_k}, region)
    CellSet region;

    // P({u > s}, region); the profile is a step function of s.
    double perimeter_at(double s) const;
    // Exact integral of s -> P({u > s}, region) over [a, b).
    double integral(double a, double b) const;
};

LevelProfile level_profile(const GridFunction& u, const CellSet& region);

using Extender = std::function<CellSet(const CellSet&)>;

struct LevelSelection {
    int depth = 0;
    std::vector<double> chosen;
    std::vector<bool> good;
    // Whether the interval contained a distinct value of u.
    std::vector<bool> sampled;
    // Collar perimeter of the chosen extended set at the finest width.
    std::vector<double> collar_budget;
    std::vector<CellSet> extended;

    std::size_t intervals() const { return chosen.size(); }
};

// Whether P(E_t) <= 2^(l+1) * integral of the profile over the dyadic interval of t.
bool satisfies_selection_inequality(const LevelProfile& profile, int depth, double t);

// Interval flags for a bare profile whose candidates are its own thresholds.
std::vector<bool> selection_flags(const LevelProfile& profile, int depth);

// u must take values in [0,1] on omega. The extender maps a subset of omega
// to a set on the whole grid.
LevelSelection select_levels(const GridFunction& u, const CellSet& omega, int depth, const Extender& extender,
                             const std::vector<double>& collar_widths);

// u_m = sum_j 2^-l chi of the extended sets.
GridFunction assemble_extension(const LevelSelection& selection, const std::vector<CellSet>& extended_sets);
GridFunction assemble_extension(const LevelSelection& selection);

std::string profile_csv(const LevelProfile& profile);
std::string selection_csv(const LevelSelection& selection);

}  // namespace gmt
