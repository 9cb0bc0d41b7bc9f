#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmt/mask_io.hpp"

namespace gmt::cli {

namespace {

std::array<double, 2> unit_coords(const Grid& g, Index i) {
    const auto c = g.center(i);
    const double wx = g.cells[0] * g.spacing(), wy = g.cells[1] * g.spacing();
    return {(c[0] - g.origin[0]) / wx, (c[1] - g.origin[1]) / wy};
}

}  // namespace

Domain load_domain(const Options& o) {
    if (!o.mask.empty()) {
        Domain d;
        d.omega = load_mask(o.mask);
        d.feature = CellSet(d.omega.grid());
        d.spec.level = d.omega.grid().level;
        return d;
    }
    const auto kind = parse_kind(o.domain);
    if (!kind) throw UsageError("unknown domain '" + o.domain + "'");
    DomainSpec spec{*kind, o.level, {}, o.seed};
    for (const std::string& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + p + "'");
        try {
            std::size_t used = 0;
            const std::string value = p.substr(eq + 1);
            spec.parameters[p.substr(0, eq)] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::logic_error&) {
            throw UsageError("--param value is not a number: '" + p + "'");
        }
    }
    return make_domain(spec);
}

CellSet select_set(const Options& o, const Domain& d) {
    const Grid& g = d.omega.grid();
    if (!o.set_mask.empty()) {
        CellSet s = load_mask(o.set_mask);
        if (!(s.grid().cells == g.cells)) throw UsageError("--set-mask extent differs from the domain");
        return CellSet(g, s.bits()) & d.omega;
    }
    if (o.set == "domain") return d.omega;
    if (o.set != "left-half" && o.set != "lower-half") throw UsageError("unknown --set '" + o.set + "'");
    const int axis = o.set == "left-half" ? 0 : 1;
    // split at the middle of the bounding box of omega
    double lo = 1e300, hi = -1e300;
    for (Index i : d.omega.members()) {
        const double c = g.center(i)[std::size_t(axis)];
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    const double mid = (lo + hi) / 2;
    CellSet s(g);
    for (Index i = 0; i < g.size(); ++i) s.set(i, d.omega.test(i) && g.center(i)[std::size_t(axis)] < mid);
    return s;
}

bool known_function(const std::string& name) {
    return name == "ramp" || name == "wave" || name == "checker" || name == "jump";
}

GridFunction sample_function(const std::string& name, const Grid& g) {
    if (!known_function(name)) throw UsageError("unknown --function '" + name + "'");
    GridFunction u(g);
    for (Index i = 0; i < g.size(); ++i) {
        const auto [x, y] = unit_coords(g, i);
        if (name == "ramp")
            u[i] = x;
        else if (name == "wave")
            u[i] = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * (x + y));
        else if (name == "checker")
            u[i] = (int(std::floor(8 * x)) + int(std::floor(8 * y))) % 2;
        else
            u[i] = x < 0.5 ? 0.0 : 1.0;
    }
    return u;
}

}  // namespace gmt::cli
