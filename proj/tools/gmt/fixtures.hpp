#pragma once

#include <string>

#include "gmt/gallery.hpp"
#include "gmt/grid.hpp"
#include "options.hpp"

namespace gmt::cli {

// Domain from --mask or from --domain/--level/--param/--seed.
Domain load_domain(const Options& o);

// Subset of omega selected by --set or --set-mask.
CellSet select_set(const Options& o, const Domain& d);

// Named test function evaluated at cell centers, scaled to [0, 1] over the
// world box of the grid.
GridFunction sample_function(const std::string& name, const Grid& g);

bool known_function(const std::string& name);

}  // namespace gmt::cli
