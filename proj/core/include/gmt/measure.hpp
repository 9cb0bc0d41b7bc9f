#pragma once

#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

struct Variation {
    double value = 0.0;
    EdgeMeasure measure;
};

// Anisotropic discrete total variation: |u(p) - u(q)| * h^(n-1) summed over
// interior faces whose two cells both lie in the region.
Variation total_variation(const GridFunction& u);
Variation total_variation(const GridFunction& u, const CellSet& region);

// Same value without materialising the measure.
double total_variation_value(const GridFunction& u);
double total_variation_value(const GridFunction& u, const CellSet& region);

double perimeter(const CellSet& e);
double perimeter(const CellSet& e, const CellSet& region);

// Set plus every cell sharing a face, edge or vertex with it.
CellSet closure(const CellSet& s);
// Cells whose full neighbourhood lies in the set; cells on the frame never qualify.
CellSet interior(const CellSet& s);
// Cells of s with a neighbour (face, edge or vertex) outside s or beyond the frame.
CellSet inner_boundary(const CellSet& s);
// Cells outside s with a neighbour (face, edge or vertex) in s.
CellSet outer_boundary(const CellSet& s);

// |E ∩ B(x,r)| / |B(x,r)| for each radius; the ball is the set of cell
// centers within r of the center of x, restricted to the grid.
std::vector<double> density_at(const CellSet& e, Index x, const std::vector<double>& radii);

struct DensityBounds {
    double upper = 0.0;
    double lower = 0.0;
};
DensityBounds density_bounds(const std::vector<double>& densities);

struct DensityScan {
    double c_hat = 0.0;
    Index worst_point = -1;
    double worst_radius = 0.0;
    Index sampled = 0;
};

// Minimum of |B(x,r) ∩ omega| / r^n over strided inner-boundary cells x of
// omega and the given radii (each at least 4h).
DensityScan measure_density_scan(const CellSet& omega, Index samples, const std::vector<double>& radii);

// Mean absolute deviation over the region divided by diam(region) * TV(u, region).
// diam is the l_inf extent of the region's bounding box.
double poincare_ratio(const GridFunction& u, const CellSet& region);

}  // namespace gmt
