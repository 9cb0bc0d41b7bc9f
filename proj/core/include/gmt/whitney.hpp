#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

// Cube [0, 2^-level]^n + index * 2^-level, with the dyadic lattice anchored at
// the grid origin. lo/side give the same cube in cell units.
struct DyadicCube {
    int level = 0;
    std::array<std::int64_t, 3> index{0, 0, 0};
    bool at_resolution_floor = false;
    Coord lo{0, 0, 0};
    int side = 1;

    double side_length(const Grid& g) const { return side * g.spacing(); }
};

struct WhitneyDecomposition {
    CellSet open_set;
    std::vector<DyadicCube> cubes;
    // Squared distance from each cube to the complement, in cell units.
    std::vector<std::int64_t> dist2;
    // Cubes whose closures intersect.
    std::vector<std::vector<std::int32_t>> neighbors;
    // Owning cube per cell, -1 outside the open set.
    std::vector<std::int32_t> cube_of;

    Index floor_cubes() const;
    double floor_measure() const;
    double dist(std::size_t k) const;
};

// Top-down dyadic subdivision; floor cubes are single cells that touch the
// complement. Asserts W1-W4 on the result.
WhitneyDecomposition whitney_decompose(const CellSet& a);

struct PartitionOfUnity {
    WhitneyDecomposition decomposition;
    // Sparse samples of psi_i at cell centers.
    std::vector<std::vector<Index>> support;
    std::vector<std::vector<double>> values;
    double gradient_bound_constant = 0.0;
};

inline constexpr double kGradientCap = 64.0;

// Tent pre-bumps clamp(1 - 8 dist(x,Q)/l(Q), 0, 1) normalised by their sum.
PartitionOfUnity partition_of_unity(WhitneyDecomposition w);

// Cube means of u (over the cells of each cube).
std::vector<double> cube_means(const GridFunction& u, const WhitneyDecomposition& w);

// sum_i mean_Q_i(u) psi_i on the open set, u elsewhere.
GridFunction smooth(const GridFunction& u, const PartitionOfUnity& pou);
GridFunction smooth_bv(const GridFunction& u, const CellSet& b, const CellSet& a);

// Cells whose center lies within `width` of the faces between a and its complement.
class Collar {
public:
    explicit Collar(const CellSet& a);
    CellSet cells(double width) const;

private:
    Grid grid_;
    std::vector<double> dist2_;
};

struct CollarSample {
    double width = 0.0;
    double variation = 0.0;
};

// Variation of v on faces touching the collar of the given widths around the
// boundary of a. Widths must be descending and at least 2h.
std::vector<CollarSample> collar_variation_profile(const GridFunction& v, const CellSet& a,
                                                   const std::vector<double>& widths);

}  // namespace gmt
