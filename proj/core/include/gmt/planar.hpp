#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gmt/components.hpp"
#include "gmt/grid.hpp"

namespace gmt {

using Vertex = std::array<int, 2>;

// Closed polyline along cell faces, traversed with the set on the left.
struct BoundaryCycle {
    std::vector<Vertex> vertices;  // closing vertex not repeated
    int sign = +1;                 // +1 outer, -1 inner
    double length = 0.0;
    int depth = 0;
    int parent = -1;               // index into JordanDecomposition::cycles
    std::int64_t twice_area = 0;   // signed, in cell units

    std::size_t faces() const { return vertices.size(); }
};

struct JordanDecomposition {
    CellSet set;
    std::vector<BoundaryCycle> cycles;
    std::vector<int> plus_cycles;
    std::vector<int> minus_cycles;
    // Innermost cycle whose interior contains each cell, -1 if none.
    std::vector<std::int32_t> innermost;
    // Parts Y_j, one per plus cycle (same order as plus_cycles).
    std::vector<std::vector<Index>> parts;

    CellSet part_set(std::size_t j) const;
    // Cells enclosed by cycle k.
    CellSet interior_of(int k) const;
    // Minus cycles whose parent is plus cycle k.
    std::vector<int> children(int k) const;
    double total_length() const;
};

// Two-dimensional sets only; the set must not touch the grid frame.
JordanDecomposition jordan_decompose(const CellSet& e);

// Cells strictly enclosed by a simple rectilinear cycle, as row spans.
std::vector<Index> cycle_interior_cells(const Grid& g, const BoundaryCycle& c);

struct GridPath {
    std::vector<Index> cells;
    Index z = -1;
    Index w = -1;
    double length = 0.0;
    bool interior_only = false;
    bool resolution_limited = false;

    // length / |z - w|; 1 for a zero-length path.
    double ratio(const Grid& g) const;
};

// Shortest 8-connected path inside `allowed` (steps of h and h*sqrt(2)).
// Throws Unreachable when no such path exists.
GridPath quasiconvex_path(const CellSet& allowed, Index z, Index w);

// Shortest path through interior(component) plus the two endpoints.
GridPath interior_path(const CellSet& component, Index z, Index w, double epsilon);

struct ArcReport {
    int component = -1;
    int kind = 0;  // +1 region added to the set, -1 region removed
    std::size_t arc_faces = 0;
    std::size_t overlap_faces = 0;
    double gamma_length = 0.0;
    double chord = 0.0;
    Index region_cells = 0;
    Index carved_cells = 0;
    int pockets = 0;
    bool closed = false;
};

struct ExtensionResult {
    CellSet extended;
    double perimeter_in = 0.0;
    double perimeter_out = 0.0;
    double overlap_length = 0.0;
    double constant = 0.0;
    std::vector<ArcReport> arcs;
};

// Length of the faces on which both the extended set and the domain jump.
double boundary_overlap(const CellSet& extended, const CellSet& omega);

ExtensionResult strong_perimeter_extend_jordan(const CellSet& e, const CellSet& omega,
                                               const ComponentLabeling& labeling);

// E plus every bounded complement component (with its closure ring) whose
// boundary faces on omega mostly face cells of E. Agrees with E on omega.
CellSet filled_baseline(const CellSet& e, const CellSet& omega, const ComponentLabeling& labeling);

ExtensionResult strong_perimeter_extend_set(const CellSet& e, const CellSet& omega, const CellSet& baseline);

struct HSetReport {
    CellSet hset;
    double length_estimate = 0.0;
};

// Cells outside omega next to omega that lie in no component closure.
HSetReport hset_report(const CellSet& omega, const ComponentLabeling& labeling);

struct ClosureContacts {
    int max_clusters_per_pair = 0;
    double max_cluster_diameter = 0.0;
    int touching_pairs = 0;
};

// Pairwise contacts between one-ring closures of complement components.
ClosureContacts closure_contacts(const ComponentLabeling& labeling);

std::string cycles_json(const JordanDecomposition& d);
std::string cycles_svg(const JordanDecomposition& d);

}  // namespace gmt
