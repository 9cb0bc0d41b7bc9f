#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "gmt/coarea.hpp"
#include "gmt/components.hpp"
#include "gmt/errors.hpp"
#include "gmt/gallery.hpp"
#include "gmt/mask_io.hpp"
#include "gmt/measure.hpp"
#include "gmt/parallel.hpp"
#include "gmt/planar.hpp"
#include "gmt/whitney.hpp"

namespace fs = std::filesystem;

namespace gmt::cli {

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

class Artifacts {
public:
    Artifacts(const Options& o, Report& r) : dir_(o.out), report_(r) {}

    bool enabled() const { return !dir_.empty(); }

    fs::path path(const std::string& name) {
        const fs::path p = fs::path(dir_) / name;
        report_.artifacts.push_back(p.string());
        return p;
    }

    void text(const std::string& name, const std::string& body) {
        if (!enabled()) return;
        std::ofstream f(path(name), std::ios::binary);
        f << body;
        if (!f) throw Error("cannot write " + (fs::path(dir_) / name).string());
    }

    void mask(const std::string& stem, const CellSet& s) {
        if (!enabled()) return;
        if (s.grid().dim == 3) {
            save_layers(s, path(stem + ".txt"));
            return;
        }
        save_pbm(s, path(stem + ".pbm"));
        save_png(s, path(stem + ".png"));
    }

private:
    std::string dir_;
    Report& report_;
};

void echo_domain(const Options& o, const Domain& d, Report& r) {
    if (!o.mask.empty()) {
        r.inputs["mask"] = o.mask;
    } else {
        r.inputs["domain"] = o.domain;
        r.inputs["seed"] = std::to_string(o.seed);
        for (const auto& [k, v] : d.spec.parameters) r.inputs["param." + k] = num(v);
    }
    r.inputs["level"] = std::to_string(d.omega.grid().level);
}

double bv_norm(const GridFunction& u) {
    double l1 = 0;
    for (double v : u.values()) l1 += std::abs(v);
    return l1 * u.grid().cell_volume() + total_variation_value(u);
}

Report gallery(const Options& o) {
    Report r;
    const Domain d = load_domain(o);
    echo_domain(o, d, r);
    const Grid& g = d.omega.grid();
    r.metrics["cells"] = double(d.omega.count());
    r.metrics["measure"] = d.omega.measure();
    r.metrics["perimeter"] = perimeter(d.omega);
    r.metrics["spacing"] = g.spacing();
    if (d.truncation_index >= 0) r.metrics["truncation_index"] = d.truncation_index;
    for (const auto& [k, v] : d.info) r.metrics["info." + k] = v;
    Artifacts art(o, r);
    art.mask("omega", d.omega);
    if (!d.feature.empty()) art.mask("feature", d.feature);
    if (art.enabled()) {
        Report meta;
        meta.command = "gallery-meta";
        meta.inputs = r.inputs;
        meta.metrics = r.metrics;
        art.text("meta.json", to_json(meta));
    }
    return r;
}

Report decompose(const Options& o) {
    Report r;
    const Domain d = load_domain(o);
    echo_domain(o, d, r);
    const WhitneyDecomposition w = whitney_decompose(d.omega);
    int finest = 0, coarsest = 1 << 30;
    for (const auto& q : w.cubes) {
        finest = std::max(finest, q.level);
        coarsest = std::min(coarsest, q.level);
    }
    r.metrics["cubes"] = double(w.cubes.size());
    r.metrics["floor_cubes"] = double(w.floor_cubes());
    r.metrics["floor_measure"] = w.floor_measure();
    r.metrics["floor_fraction"] = d.omega.empty() ? 0.0 : w.floor_measure() / d.omega.measure();
    r.metrics["coarsest_level"] = w.cubes.empty() ? 0 : coarsest;
    r.metrics["finest_level"] = finest;
    Artifacts art(o, r);
    if (art.enabled()) {
        std::ostringstream csv;
        csv << "level,x,y,z,side_cells,floor,dist\n";
        for (std::size_t k = 0; k < w.cubes.size(); ++k) {
            const auto& q = w.cubes[k];
            csv << q.level << ',' << q.lo[0] << ',' << q.lo[1] << ',' << q.lo[2] << ',' << q.side << ','
                << int(q.at_resolution_floor) << ',' << num(w.dist(k)) << '\n';
        }
        art.text("cubes.csv", csv.str());
    }
    if (d.omega.grid().dim == 2) {
        const PartitionOfUnity pou = partition_of_unity(w);
        r.metrics["gradient_bound_constant"] = pou.gradient_bound_constant;
    }
    return r;
}

Report jordan(const Options& o) {
    Report r;
    const Domain d = load_domain(o);
    echo_domain(o, d, r);
    r.inputs["set"] = o.set_mask.empty() ? o.set : o.set_mask;
    const CellSet e = select_set(o, d);
    const JordanDecomposition jd = jordan_decompose(e);
    double sum = 0;
    for (const auto& c : jd.cycles) sum += c.length;
    r.metrics["cycles"] = double(jd.cycles.size());
    r.metrics["plus_cycles"] = double(jd.plus_cycles.size());
    r.metrics["minus_cycles"] = double(jd.minus_cycles.size());
    r.metrics["perimeter"] = perimeter(e);
    r.metrics["cycle_length_sum"] = sum;
    CellSet un(e.grid());
    for (std::size_t j = 0; j < jd.parts.size(); ++j) un |= jd.part_set(j);
    r.metrics["parts_reassemble"] = un == e ? 1.0 : 0.0;
    Artifacts art(o, r);
    art.text("cycles.json", cycles_json(jd));
    art.text("cycles.svg", cycles_svg(jd));
    return r;
}

Report smooth_cmd(const Options& o) {
    Report r;
    const Domain d = load_domain(o);
    echo_domain(o, d, r);
    r.inputs["function"] = o.function;
    const Grid& g = d.omega.grid();
    const GridFunction u = sample_function(o.function, g);
    const PartitionOfUnity pou = partition_of_unity(whitney_decompose(d.omega));
    const GridFunction s = smooth(u, pou);
    r.metrics["bv_norm_in"] = bv_norm(u);
    r.metrics["bv_norm_out"] = bv_norm(s);
    r.metrics["norm_ratio"] = bv_norm(s) / bv_norm(u);
    r.metrics["gradient_bound_constant"] = pou.gradient_bound_constant;
    GridFunction v(g);
    for (Index i = 0; i < g.size(); ++i) v[i] = s[i] - u[i];
    std::vector<double> widths;
    for (int k = 2; k <= 5; ++k)
        if (std::ldexp(1.0, -k) >= 2 * g.spacing()) widths.push_back(std::ldexp(1.0, -k));
    std::ostringstream csv;
    csv << "width,variation\n";
    if (!widths.empty()) {
        const auto prof = collar_variation_profile(v, d.omega, widths);
        for (const auto& p : prof) {
            r.metrics["collar." + num(p.width)] = p.variation;
            csv << num(p.width) << ',' << num(p.variation) << '\n';
        }
        if (prof.front().variation > 0) r.metrics["collar_decay"] = prof.back().variation / prof.front().variation;
    }
    Artifacts art(o, r);
    art.text("collar.csv", csv.str());
    if (art.enabled() && g.dim == 2) {
        std::vector<std::uint8_t> px(std::size_t(g.size()));
        double lo = 1e300, hi = -1e300;
        for (double x : s.values()) lo = std::min(lo, x), hi = std::max(hi, x);
        for (Index i = 0; i < g.size(); ++i)
            px[std::size_t(i)] = std::uint8_t(hi > lo ? std::lround(255 * (s[i] - lo) / (hi - lo)) : 0);
        save_gray_png(g, px, art.path("smoothed.png"));
    }
    return r;
}

Report coarea_cmd(const Options& o) {
    Report r;
    const Domain d = load_domain(o);
    echo_domain(o, d, r);
    r.inputs["function"] = o.function;
    const Grid& g = d.omega.grid();
    GridFunction u = sample_function(o.function, g);
    for (Index i = 0; i < g.size(); ++i)
        if (!d.omega.test(i)) u[i] = 0.0;
    const CoareaCheck c = coarea_check(u);
    r.metrics["tv"] = c.tv;
    r.metrics["integral"] = c.integral;
    r.metrics["rel_err"] = c.rel_err;
    Artifacts art(o, r);
    art.text("profile.csv", profile_csv(level_profile(u, d.omega)));
    if (o.depth > 0) {
        r.inputs["depth"] = std::to_string(o.depth);
        const Extender identity = [](const CellSet& e) { return e; };
        const LevelSelection sel = select_levels(u, d.omega, o.depth, identity, {});
        const GridFunction um = assemble_extension(sel);
        double sup = 0, bound = 0;
        for (Index i = 0; i < g.size(); ++i)
            if (d.omega.test(i)) sup = std::max(sup, std::abs(um[i] - u[i]));
        for (const CellSet& s : sel.extended) bound += std::ldexp(perimeter(s), -o.depth);
        r.metrics["assembly_sup_error"] = sup;
        r.metrics["assembly_tv"] = total_variation_value(um);
        r.metrics["assembly_tv_bound"] = bound;
        r.metrics["good_intervals"] = double(std::count(sel.good.begin(), sel.good.end(), true));
        art.text("selection.csv", selection_csv(sel));
    }
    return r;
}

Report extend(const Options& o) {
    Report r;
    const Domain d = load_domain(o);
    echo_domain(o, d, r);
    r.inputs["set"] = o.set_mask.empty() ? o.set : o.set_mask;
    r.inputs["mode"] = o.mode;
    const CellSet e = select_set(o, d);
    const ComponentLabeling lab = complement_components(d.omega);
    ExtensionResult x;
    if (o.mode == "jordan") {
        x = strong_perimeter_extend_jordan(e, d.omega, lab);
    } else if (o.mode == "set") {
        r.inputs["baseline"] = o.baseline;
        if (o.baseline != "self" && o.baseline != "filled") throw UsageError("unknown --baseline '" + o.baseline + "'");
        x = strong_perimeter_extend_set(e, d.omega, o.baseline == "filled" ? filled_baseline(e, d.omega, lab) : e);
    } else {
        throw UsageError("unknown --mode '" + o.mode + "'");
    }
    r.metrics["constant"] = x.constant;
    r.metrics["overlap_length"] = x.overlap_length;
    r.metrics["perimeter_in"] = x.perimeter_in;
    r.metrics["perimeter_out"] = x.perimeter_out;
    r.metrics["arcs"] = double(x.arcs.size());
    r.metrics["components"] = double(lab.count());
    r.metrics["hset_length"] = hset_report(d.omega, lab).length_estimate;
    Artifacts art(o, r);
    art.mask("set", e);
    art.mask("extended", x.extended);
    return r;
}

void require(bool ok, const std::string& invariant) {
    if (!ok) throw ContractViolation("verify: " + invariant);
}

Report verify(const Options& o) {
    Report r;
    r.inputs["trials"] = std::to_string(o.trials);
    r.inputs["seed"] = std::to_string(o.seed);
    r.inputs["level"] = std::to_string(o.level);
    int coarea_n = 0, whitney_n = 0, jordan_n = 0, extension_n = 0;
    double worst_rel = 0;
    for (int t = 0; t < o.trials; ++t) {
        const Domain d = make_domain({DomainKind::RandomPolyomino, o.level, {}, o.seed + std::uint64_t(t)});
        const Grid& g = d.omega.grid();

        GridFunction u(g);
        for (Index i = 0; i < g.size(); ++i) u[i] = double((i * 7919 + t * 104729) % 16);
        const CoareaCheck c = coarea_check(u);
        worst_rel = std::max(worst_rel, c.rel_err);
        require(c.rel_err <= 1e-9, "coarea identity TV = integral of level perimeters");
        ++coarea_n;

        // asserts W1-W4 itself
        const PartitionOfUnity pou = partition_of_unity(whitney_decompose(d.omega));
        require(pou.gradient_bound_constant <= kGradientCap, "partition of unity gradient bound");
        ++whitney_n;

        const JordanDecomposition jd = jordan_decompose(d.omega);
        double sum = 0;
        for (const auto& cyc : jd.cycles) sum += cyc.length;
        require(sum == perimeter(d.omega), "perimeter equals the sum of cycle lengths");
        CellSet un(g);
        for (std::size_t j = 0; j < jd.parts.size(); ++j) un |= jd.part_set(j);
        require(un == d.omega, "Jordan parts reassemble the set");
        ++jordan_n;

        Options half = o;
        half.set = "left-half";
        const CellSet e = select_set(half, d);
        const auto x = strong_perimeter_extend_set(e, d.omega, e);
        require((x.extended & d.omega) == e, "extension agrees with the set on the domain");
        require(x.overlap_length <= boundary_overlap(e, d.omega), "extension does not add boundary on the domain");
        ++extension_n;
    }
    r.metrics["coarea_checked"] = coarea_n;
    r.metrics["coarea_max_rel_err"] = worst_rel;
    r.metrics["whitney_checked"] = whitney_n;
    r.metrics["jordan_checked"] = jordan_n;
    r.metrics["extension_checked"] = extension_n;
    return r;
}

}  // namespace

void prepare_output(const Options& o) {
    if (o.out.empty()) return;
    const fs::path dir(o.out);
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) throw UsageError("--out " + o.out + " exists and is not a directory");
        if (!fs::is_empty(dir) && !o.force) throw UsageError("--out " + o.out + " is not empty; pass --force to overwrite");
    }
    fs::create_directories(dir);
}

Report run_command(const Options& o) {
    Report r;
    if (o.command == "gallery")
        r = gallery(o);
    else if (o.command == "decompose")
        r = decompose(o);
    else if (o.command == "jordan")
        r = jordan(o);
    else if (o.command == "smooth")
        r = smooth_cmd(o);
    else if (o.command == "coarea")
        r = coarea_cmd(o);
    else if (o.command == "extend")
        r = extend(o);
    else if (o.command == "verify")
        r = verify(o);
    else
        throw UsageError("unknown command '" + o.command + "'");
    r.command = o.command;
    return r;
}

std::string run_sweep(const Options& o) {
    if (o.levels.empty()) throw UsageError("sweep needs --levels");
    if (o.sweep_command == "sweep" || o.sweep_command == "verify") throw UsageError("sweep cannot repeat '" + o.sweep_command + "'");
    std::vector<std::future<Report>> pending;
    std::vector<Report> done;
    const std::size_t width = std::size_t(std::max(1, thread_count()));
    auto launch = [&](int level) {
        Options one = o;
        one.command = o.sweep_command;
        one.level = level;
        one.out.clear();
        return std::async(std::launch::async, [one] { return run_command(one); });
    };
    // bounded window of concurrent levels; results are kept in level order
    std::size_t next = 0;
    while (done.size() < o.levels.size()) {
        while (next < o.levels.size() && pending.size() - done.size() < width) pending.push_back(launch(o.levels[next++]));
        done.push_back(pending[done.size()].get());
    }
    std::set<std::string> keys;
    for (const Report& r : done)
        for (const auto& [k, v] : r.metrics) keys.insert(k);
    std::ostringstream csv;
    csv << "level";
    for (const auto& k : keys) csv << ',' << k;
    csv << '\n';
    for (std::size_t i = 0; i < done.size(); ++i) {
        csv << o.levels[i];
        for (const auto& k : keys) {
            csv << ',';
            if (auto it = done[i].metrics.find(k); it != done[i].metrics.end()) csv << num(it->second);
        }
        csv << '\n';
    }
    return csv.str();
}

}  // namespace gmt::cli
