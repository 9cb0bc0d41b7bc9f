#pragma once

#include <cstdint>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

// Face-connected components of the complement of closure(omega).
struct ComponentLabeling {
    Grid grid;
    CellSet omega;
    // Cells of each component, ascending; components sorted by size (desc).
    std::vector<std::vector<Index>> components;
    std::vector<bool> unbounded;
    // Faces between a component cell and a cell outside that component.
    std::vector<std::vector<Face>> boundary_faces;
    // Component id per cell, -1 where none.
    std::vector<std::int32_t> label;
    // For cells outside omega and outside every component: id of the lowest
    // component whose one-ring dilation contains the cell, else -1.
    std::vector<std::int32_t> closure_label;
    // Number of cells that lie in the dilation of two or more components.
    Index shared_closure_cells = 0;

    std::size_t count() const { return components.size(); }
    CellSet component_set(std::size_t k) const;
    // Component k dilated by one ring of face/edge/vertex neighbours.
    CellSet component_closure(std::size_t k) const;
};

ComponentLabeling complement_components(const CellSet& omega);

// Face-connected components of an arbitrary set, each list ascending, in
// order of first cell.
std::vector<std::vector<Index>> face_components(const CellSet& s);

}  // namespace gmt
