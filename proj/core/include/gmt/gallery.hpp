#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

enum class DomainKind { Square, Disk, SlitDisk, Comb, Cusp, FatCantor3D, RandomPolyomino };

struct DomainSpec {
    DomainKind kind = DomainKind::Square;
    int level = 6;
    // Per-kind reals; missing keys take the defaults listed in kind_parameters().
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
};

struct Domain {
    DomainSpec spec;
    CellSet omega;
    // Distinguished cells outside omega: the slit of slit_disk and comb_4_2.
    CellSet feature;
    // Finest rectangle family (comb) or Cantor depth (fat_cantor_3d); -1 otherwise.
    int truncation_index = -1;
    std::map<std::string, double> info;
};

std::string kind_name(DomainKind k);
std::optional<DomainKind> parse_kind(std::string_view name);
std::map<std::string, double> kind_parameters(DomainKind k);

// Throws ResolutionError when the level cannot resolve the smallest feature.
Domain make_domain(const DomainSpec& spec);

struct DensityClass {
    CellSet high_density_boundary;
    double fraction = 0.0;
};

// Boundary-band cells whose largest density over the radii exceeds
// 1/2 + 2h/min(radii).
DensityClass classify_density(const CellSet& omega, const std::vector<double>& radii);

// Fraction of the cells of `subset` classified high density.
double high_density_fraction(const DensityClass& c, const CellSet& subset);

// Smith-Volterra set on [0,1] truncated after `depth` removal steps, as
// sorted closed intervals.
std::vector<std::pair<double, double>> fat_cantor_intervals(int depth);
double distance_to_intervals(const std::vector<std::pair<double, double>>& iv, double x);

}  // namespace gmt
