#include "gmt/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gmt/distance.hpp"
#include "gmt/errors.hpp"
#include "gmt/measure.hpp"
#include "gmt/parallel.hpp"

namespace gmt {
namespace {

constexpr int kMargin = 6;

double param(const DomainSpec& s, const std::string& key) {
    if (auto it = s.parameters.find(key); it != s.parameters.end()) return it->second;
    const auto defaults = kind_parameters(s.kind);
    if (auto it = defaults.find(key); it != defaults.end()) return it->second;
    throw InvalidInput("missing parameter " + key);
}

// Grid whose cell (i, j) has its center at world (i0 + i, j0 + j) * h.
Grid centered_grid(int level, int lo, int hi) {
    const double h = std::ldexp(1.0, -level);
    const int n = hi - lo + 1;
    return Grid::make(2, level, {n, n, 1}, {(lo - 0.5) * h, (lo - 0.5) * h, 0.0});
}

// Lattice points within `radius` of the origin.
std::int64_t lattice_ball_size(int dim, double radius) {
    const int k = int(std::floor(radius));
    const double r2 = radius * radius;
    std::int64_t n = 0;
    const int kz = dim == 3 ? k : 0;
    for (int z = -kz; z <= kz; ++z)
        for (int y = -k; y <= k; ++y)
            for (int x = -k; x <= k; ++x)
                if (double(x) * x + double(y) * y + double(z) * z <= r2) ++n;
    return n;
}

int cells_for(double length, int level, const char* what) {
    const double c = std::ldexp(length, level);
    if (std::abs(c - std::round(c)) > 1e-9) throw ResolutionError(std::string(what) + " is not a whole number of cells");
    return int(std::round(c));
}

Domain square(const DomainSpec& s) {
    const double side = param(s, "side");
    if (!(side > 0)) throw InvalidInput("square: side must be positive");
    const int n = cells_for(side, s.level, "square side");
    if (n < 2) throw ResolutionError("square side spans fewer than 2 cells");
    const double h = std::ldexp(1.0, -s.level);
    const int total = n + 2 * kMargin;
    Grid g = Grid::make(2, s.level, {total, total, 1}, {-side / 2 - kMargin * h, -side / 2 - kMargin * h, 0.0});
    Domain d{s, CellSet(g), CellSet(g), -1, {{"side", side}}};
    for (int y = kMargin; y < kMargin + n; ++y)
        for (int x = kMargin; x < kMargin + n; ++x) d.omega.set(g.index(x, y));
    return d;
}

Domain disk(const DomainSpec& s, bool slit) {
    const double radius = param(s, "radius");
    const double rc = std::ldexp(radius, s.level);
    if (rc < 2) throw ResolutionError("disk radius spans fewer than 2 cells");
    const int k = int(std::ceil(rc)) + kMargin;
    Grid g = centered_grid(s.level, -k, k);
    Domain d{s, CellSet(g), CellSet(g), -1, {{"radius", radius}}};
    for (int j = -k; j <= k; ++j)
        for (int i = -k; i <= k; ++i) {
            const Index c = g.index(i + k, j + k);
            if (double(i) * i + double(j) * j >= rc * rc) continue;
            if (slit && j == 0 && i >= 0 && double(i) < rc) {
                d.feature.set(c);
                continue;
            }
            d.omega.set(c);
        }
    return d;
}

Domain comb(const DomainSpec& s) {
    const int level = s.level;
    if (level < 4) throw ResolutionError("comb_4_2: rectangle family E_2 spans fewer than 2 cells at level " + std::to_string(level));
    const int n = 1 << level;  // cells per unit length
    const int half = n / 2;
    const int k = n - 1 + kMargin;
    Grid g = centered_grid(level, -k, k);
    Domain d{s, CellSet(g), CellSet(g), level - 2, {}};
    auto at = [&](int i, int j) { return g.index(i + k, j + k); };
    for (int j = -(n - 1); j <= n - 1; ++j)
        for (int i = -(n - 1); i <= n - 1; ++i) d.omega.set(at(i, j));
    for (int j = -half; j <= half; ++j) {
        d.omega.set(at(0, j), false);
        d.feature.set(at(0, j));
    }
    Index rects = 0;
    for (int fam = 2; fam <= d.truncation_index; ++fam) {
        const int side = 1 << (level - fam);
        const int gap = std::max(int(std::lround(side / 8.0)), 1);
        for (int r = 0; r < (1 << fam); ++r) {
            const int y0 = -half + r * side, y1 = -half + (r + 1) * side - gap - 1;
            for (int j = y0; j <= y1; ++j)
                for (int i = side + gap; i <= 2 * side - 1; ++i) {
                    d.omega.set(at(i, j), false);
                    d.omega.set(at(-i, j), false);
                }
            rects += 2;
        }
    }
    d.info["rectangles"] = double(rects);
    d.info["truncation_index"] = d.truncation_index;
    return d;
}

Domain cusp(const DomainSpec& s) {
    const int n = 1 << s.level;
    if (s.level < 3) throw ResolutionError("cusp: tip region spans fewer than 2 cells");
    Grid g = centered_grid(s.level, -kMargin, n + kMargin);
    Domain d{s, CellSet(g), CellSet(g), -1, {}};
    const double h = g.spacing();
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i < n; ++i) {
            const double x = i * h, y = j * h;
            if (y < x * x) d.omega.set(g.index(i + kMargin, j + kMargin));
        }
    return d;
}

Domain fat_cantor(const DomainSpec& s) {
    const int level = s.level;
    if (level < 3) throw ResolutionError("fat_cantor_3d: Cantor gaps span fewer than 2 cells");
    const int n = 2 << level;  // cells across (-1, 1)
    const int m = 2;
    const double h = std::ldexp(1.0, -level);
    // deepest removal step whose gap is still at least one cell wide
    int depth = 0;
    while (std::ldexp(1.0, -2 * (depth + 1)) >= h) ++depth;
    const auto iv = fat_cantor_intervals(depth);
    Grid g = Grid::make(3, level, {n + 2 * m, n + 2 * m, n + 2 * m}, {-1 - m * h, -1 - m * h, -1 - m * h});
    Domain d{s, CellSet(g), CellSet(g), depth, {{"depth", double(depth)}}};
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dist[std::size_t(i)] = distance_to_intervals(iv, -1 + (i + 0.5) * h);
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double x1 = -1 + (x + 0.5) * h, x2 = -1 + (y + 0.5) * h, x3 = -1 + (z + 0.5) * h;
                bool wedge = false;
                if (x1 >= 0 && x1 <= 1 && x2 >= 0 && x2 <= 1) {
                    const double dx = dist[std::size_t(x)], dy = dist[std::size_t(y)];
                    wedge = std::abs(x3) <= std::sqrt(dx * dx + dy * dy);
                }
                if (!wedge) d.omega.set(g.index(x + m, y + m, z + m));
            }
    return d;
}

Domain polyomino(const DomainSpec& s) {
    const int n = 1 << s.level;
    if (n < 8) throw ResolutionError("random_polyomino: grid below 8 cells");
    Grid g = Grid::make(2, s.level, {n, n, 1});
    Domain d{s, CellSet(g), CellSet(g), -1, {}};
    std::mt19937_64 rng(s.seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int adds = int(param(s, "rectangles"));
    const int holes = int(param(s, "holes"));
    auto rect = [&](bool v, int max_side) {
        const int w = uni(1, max_side), h = uni(1, max_side);
        const int x0 = uni(1, n - 1 - w), y0 = uni(1, n - 1 - h);
        for (int y = y0; y < y0 + h; ++y)
            for (int x = x0; x < x0 + w; ++x) d.omega.set(g.index(x, y), v);
    };
    for (int r = 0; r < adds; ++r) rect(true, n / 2);
    for (int r = 0; r < holes; ++r) rect(false, n / 6);
    if (d.omega.empty()) d.omega.set(g.index(n / 2, n / 2));
    return d;
}

}  // namespace

std::string kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::Square: return "square";
        case DomainKind::Disk: return "disk";
        case DomainKind::SlitDisk: return "slit_disk";
        case DomainKind::Comb: return "comb_4_2";
        case DomainKind::Cusp: return "cusp";
        case DomainKind::FatCantor3D: return "fat_cantor_3d";
        case DomainKind::RandomPolyomino: return "random_polyomino";
    }
    return "?";
}

std::optional<DomainKind> parse_kind(std::string_view name) {
    for (auto k : {DomainKind::Square, DomainKind::Disk, DomainKind::SlitDisk, DomainKind::Comb, DomainKind::Cusp,
                   DomainKind::FatCantor3D, DomainKind::RandomPolyomino})
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

std::map<std::string, double> kind_parameters(DomainKind k) {
    switch (k) {
        case DomainKind::Square: return {{"side", 1.0}};
        case DomainKind::Disk: return {{"radius", 0.5}};
        case DomainKind::SlitDisk: return {{"radius", 1.0}};
        case DomainKind::RandomPolyomino: return {{"rectangles", 6}, {"holes", 3}};
        default: return {};
    }
}

Domain make_domain(const DomainSpec& spec) {
    if (spec.level < 1 || spec.level > 14) throw InvalidInput("level out of range: " + std::to_string(spec.level));
    const auto known = kind_parameters(spec.kind);
    for (const auto& [key, value] : spec.parameters) {
        if (!known.count(key)) throw InvalidInput(kind_name(spec.kind) + ": unknown parameter " + key);
        if (!std::isfinite(value)) throw InvalidInput(kind_name(spec.kind) + ": parameter " + key + " is not finite");
    }
    switch (spec.kind) {
        case DomainKind::Square: return square(spec);
        case DomainKind::Disk: return disk(spec, false);
        case DomainKind::SlitDisk: return disk(spec, true);
        case DomainKind::Comb: return comb(spec);
        case DomainKind::Cusp: return cusp(spec);
        case DomainKind::FatCantor3D: return fat_cantor(spec);
        case DomainKind::RandomPolyomino: return polyomino(spec);
    }
    throw InvalidInput("unknown domain kind");
}

std::vector<std::pair<double, double>> fat_cantor_intervals(int depth) {
    std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
    for (int k = 1; k <= depth; ++k) {
        const double gap = std::ldexp(1.0, -2 * k);
        std::vector<std::pair<double, double>> next;
        next.reserve(iv.size() * 2);
        for (auto [a, b] : iv) {
            const double mid = (a + b) / 2;
            next.push_back({a, mid - gap / 2});
            next.push_back({mid + gap / 2, b});
        }
        iv = std::move(next);
    }
    return iv;
}

double distance_to_intervals(const std::vector<std::pair<double, double>>& iv, double x) {
    auto it = std::lower_bound(iv.begin(), iv.end(), x, [](const auto& p, double v) { return p.second < v; });
    double best = std::numeric_limits<double>::infinity();
    if (it != iv.end()) best = std::max(0.0, it->first - x);
    if (it != iv.begin()) best = std::min(best, x - std::prev(it)->second);
    return best;
}

DensityClass classify_density(const CellSet& omega, const std::vector<double>& radii) {
    if (radii.empty()) throw InvalidInput("classify_density: no radii");
    const Grid& g = omega.grid();
    const double rmin = *std::min_element(radii.begin(), radii.end());
    if (!(rmin >= 2.0 * g.spacing())) throw ScaleError("classify_density: radius below 2h");
    const double threshold = 0.5 + 2 * g.spacing() / rmin;
    const std::vector<Index> band = (inner_boundary(omega) | outer_boundary(omega)).members();
    const BallCounter counter(omega);
    // cells beyond the frame are outside omega, so divide by the whole ball
    std::vector<double> ball;
    for (double r : radii) ball.push_back(double(lattice_ball_size(g.dim, r / g.spacing())));
    std::vector<std::uint8_t> high(band.size(), 0);
    parallel_blocks(Index(band.size()), 256, [&](Index b, Index e) {
        for (Index k = b; k < e; ++k)
            for (std::size_t j = 0; j < radii.size(); ++j) {
                const auto c = counter.count(band[std::size_t(k)], radii[j] / g.spacing());
                if (double(c.in_set) / ball[j] > threshold) high[std::size_t(k)] = 1;
            }
    });
    DensityClass out{CellSet(g), 0.0};
    Index total = Index(band.size()), hits = 0;
    for (std::size_t k = 0; k < band.size(); ++k)
        if (high[k]) {
            out.high_density_boundary.set(band[k]);
            ++hits;
        }
    out.fraction = total ? double(hits) / double(total) : 0.0;
    return out;
}

double high_density_fraction(const DensityClass& c, const CellSet& subset) {
    const Index n = subset.count();
    if (n == 0) return 0.0;
    return double((c.high_density_boundary & subset).count()) / double(n);
}

}  // namespace gmt
