#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "gmt/errors.hpp"
#include "gmt/report.hpp"

using gmt::cli::Options;

namespace {

void domain_flags(CLI::App& c, Options& o) {
    c.add_option("--domain", o.domain, "square|disk|slit_disk|comb_4_2|cusp|fat_cantor_3d|random_polyomino");
    c.add_option("--level", o.level, "grid level L (h = 2^-L)");
    c.add_option("--param", o.params, "per-kind parameter key=value (repeatable)");
    c.add_option("--mask", o.mask, "PBM/PNG/layer file used instead of --domain");
    c.add_option("--seed", o.seed, "random seed");
}

void set_flags(CLI::App& c, Options& o) {
    c.add_option("--set", o.set, "left-half|lower-half|domain");
    c.add_option("--set-mask", o.set_mask, "mask file selecting the set (same extent as the domain)");
}

void output_flags(CLI::App& c, Options& o) {
    c.add_option("--out", o.out, "directory for masks, overlays and tables");
    c.add_flag("--force", o.force, "allow writing into a non-empty --out");
}

const char* error_kind(const gmt::Error& e) {
    if (dynamic_cast<const gmt::ContractViolation*>(&e)) return "contract violation";
    if (dynamic_cast<const gmt::ParseError*>(&e)) return "parse error";
    if (dynamic_cast<const gmt::InvalidInput*>(&e)) return "invalid input";
    if (dynamic_cast<const gmt::ResolutionError*>(&e)) return "resolution error";
    if (dynamic_cast<const gmt::ScaleError*>(&e)) return "scale error";
    if (dynamic_cast<const gmt::Unreachable*>(&e)) return "unreachable";
    if (dynamic_cast<const gmt::UndefinedRatio*>(&e)) return "undefined ratio";
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gmt: grid experiments on BV extension domains"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gmt::version());
    Options o;

    auto* gallery = app.add_subcommand("gallery", "build a gallery domain and write its mask");
    domain_flags(*gallery, o);
    output_flags(*gallery, o);

    auto* decompose = app.add_subcommand("decompose", "Whitney decomposition of the domain");
    domain_flags(*decompose, o);
    output_flags(*decompose, o);

    auto* jordan = app.add_subcommand("jordan", "decompose a planar set into boundary cycles");
    domain_flags(*jordan, o);
    set_flags(*jordan, o);
    output_flags(*jordan, o);

    auto* smooth = app.add_subcommand("smooth", "smooth a test function inside the domain");
    domain_flags(*smooth, o);
    smooth->add_option("--function", o.function, "ramp|wave|checker|jump");
    output_flags(*smooth, o);

    auto* coarea = app.add_subcommand("coarea", "coarea identity and level assembly");
    domain_flags(*coarea, o);
    coarea->add_option("--function", o.function, "ramp|wave|checker|jump");
    coarea->add_option("--depth", o.depth, "run level selection with dyadic depth l (0 = off)")->check(CLI::Range(0, 12));
    output_flags(*coarea, o);

    auto* extend = app.add_subcommand("extend", "strong perimeter extension of a subset of the domain");
    domain_flags(*extend, o);
    set_flags(*extend, o);
    extend->add_option("--mode", o.mode, "set|jordan");
    extend->add_option("--baseline", o.baseline, "self|filled (set mode)");
    output_flags(*extend, o);

    auto* verify = app.add_subcommand("verify", "run the invariant suites on random domains");
    verify->add_option("--trials", o.trials, "number of random domains")->check(CLI::PositiveNumber);
    verify->add_option("--level", o.level, "grid level of the random domains");
    verify->add_option("--seed", o.seed, "first seed");

    auto* sweep = app.add_subcommand("sweep", "repeat a command across levels and print a CSV");
    sweep->add_option("--cmd", o.sweep_command, "command to repeat")->required();
    sweep->add_option("--levels", o.levels, "comma separated levels")->required()->delimiter(',');
    domain_flags(*sweep, o);
    set_flags(*sweep, o);
    sweep->add_option("--function", o.function, "ramp|wave|checker|jump");
    sweep->add_option("--depth", o.depth, "level selection depth for coarea");
    sweep->add_option("--mode", o.mode, "set|jordan");
    sweep->add_option("--baseline", o.baseline, "self|filled");
    output_flags(*sweep, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        gmt::cli::prepare_output(o);
        if (o.command == "sweep") {
            const std::string csv = gmt::cli::run_sweep(o);
            std::cout << csv;
            if (!o.out.empty()) std::ofstream(o.out + "/sweep.csv", std::ios::binary) << csv;
            return 0;
        }
        std::cout << gmt::to_json(gmt::cli::run_command(o)) << '\n';
        return 0;
    } catch (const gmt::cli::UsageError& e) {
        std::cerr << "gmt " << o.command << ": usage error: " << e.what() << '\n';
        return 2;
    } catch (const gmt::Error& e) {
        std::cerr << "gmt " << o.command << ": " << error_kind(e) << ": " << e.what() << '\n';
        return 1;
    }
}
