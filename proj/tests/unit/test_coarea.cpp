#include <cmath>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "gmt/coarea.hpp"
#include "gmt/errors.hpp"
#include "gmt/gallery.hpp"
#include "gmt/measure.hpp"
#include "oracles.hpp"

using namespace gmt;

namespace {

Grid unit_grid(int level) {
    const int n = 1 << level;
    return Grid::make(2, level, {n, n, 1});
}

LevelProfile synthetic(std::vector<double> t, std::vector<double> p) {
    LevelProfile prof;
    prof.thresholds = std::move(t);
    prof.perimeters = std::move(p);
    return prof;
}

}  // namespace

TEST_CASE("superlevel") {
    const Grid g = unit_grid(4);
    GridFunction ramp(g), chk(g);
    for (Index i = 0; i < g.size(); ++i) {
        ramp[i] = g.center(i)[0];
        const Coord c = g.coords(i);
        chk[i] = (c[0] + c[1]) % 2;
    }
    const CellSet right = superlevel(ramp, 0.5);
    for (Index i = 0; i < g.size(); ++i) CHECK(right.test(i) == (g.coords(i)[0] >= 8));
    CHECK(superlevel(ramp, -1.0) == CellSet::full(g));
    CHECK(superlevel(ramp, 1.0).empty());
    for (Index i = 0; i < g.size(); ++i) CHECK(superlevel(chk, 0.5).test(i) == (chk[i] == 1.0));
}

TEST_CASE("coarea examples") {
    const Grid g = unit_grid(6);
    GridFunction ramp(g);
    for (Index i = 0; i < g.size(); ++i) ramp[i] = std::floor(g.center(i)[0] * 16) / 15;
    const auto c = coarea_check(ramp);
    CHECK(std::abs(c.tv - 1.0) <= 1e-9);
    CHECK(std::abs(c.integral - 1.0) <= 1e-9);
    const auto z = coarea_check(GridFunction(g, 0.3));
    CHECK(z.tv == 0.0);
    CHECK(z.integral == 0.0);
    CHECK(z.rel_err == 0.0);
}

TEST_CASE("property: coarea identity against the level-by-level oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const GridFunction u = gen::integer_field(rng, Grid::make(2, 5, {32, 32, 1}), 15);
        const auto c = coarea_check(u);
        CHECK(c.rel_err <= 1e-9);
        CHECK(c.tv == doctest::Approx(oracle::total_variation(u)).epsilon(1e-12));
        CHECK(c.integral == doctest::Approx(oracle::coarea_integral(u)).epsilon(1e-12));
    }
}

TEST_CASE("property: superlevel sets are nested") {
    std::mt19937_64 rng(8);
    const GridFunction u = gen::integer_field(rng, unit_grid(5), 20);
    for (double t = -0.5; t < 20; t += 0.75) CHECK(superlevel(u, t + 0.5).subset_of(superlevel(u, t)));
}

TEST_CASE("level profile integral is exact for step profiles") {
    const auto p = synthetic({0.0, 0.25, 0.5}, {2.0, 4.0, 1.0});
    CHECK(p.perimeter_at(-0.1) == 0.0);
    CHECK(p.perimeter_at(0.3) == 4.0);
    CHECK(p.integral(0.0, 1.0) == doctest::Approx(0.25 * 2 + 0.25 * 4 + 0.5 * 1));
    CHECK(p.integral(0.1, 0.3) == doctest::Approx(0.15 * 2 + 0.05 * 4));
}

TEST_CASE("selection inequality: linear profile passes at left endpoints") {
    std::vector<double> t, p;
    for (int k = 0; k < 64; ++k) {
        t.push_back(k / 64.0);
        p.push_back(3.0 * k / 64.0);
    }
    const auto prof = synthetic(t, p);
    for (int depth = 1; depth <= 4; ++depth)
        for (int j = 0; j < (1 << depth); ++j) CHECK(satisfies_selection_inequality(prof, depth, std::ldexp(double(j), -depth)));
}

TEST_CASE("selection flags: a single spike gives exactly one bad interval") {
    const auto prof = synthetic({0.0, 0.45, 0.5, 0.75}, {1.0, 5.0, 0.0, 1.0});
    const auto flags = selection_flags(prof, 2);
    REQUIRE(flags.size() == 4);
    CHECK(flags[0]);
    CHECK_FALSE(flags[1]);
    CHECK(flags[2]);
    CHECK(flags[3]);
    // brute force: every candidate in [1/4, 1/2) violates the inequality
    CHECK(prof.perimeter_at(0.45) > 8 * prof.integral(0.25, 0.5));
}

TEST_CASE("select_levels and assembly") {
    const Domain sq = make_domain({DomainKind::Square, 6, {}, 0});
    const Grid& g = sq.omega.grid();
    GridFunction ramp(g);
    for (Index i = 0; i < g.size(); ++i)
        if (sq.omega.test(i)) ramp[i] = g.center(i)[0] + 0.5;
    const Extender identity = [](const CellSet& e) { return e; };

    SUBCASE("indicator at depth 1") {
        CellSet e(g);
        for (Index i = 0; i < g.size(); ++i) e.set(i, sq.omega.test(i) && g.center(i)[1] > 0);
        const auto sel = select_levels(GridFunction::indicator(e), sq.omega, 1, identity, {});
        REQUIRE(sel.intervals() == 2);
        CHECK(sel.good[0]);
        CHECK(sel.extended[0] == e);
    }
    SUBCASE("chosen thresholds lie in their intervals") {
        for (int depth : {2, 3, 4}) {
            const auto sel = select_levels(ramp, sq.omega, depth, identity, {0.125, 0.0625});
            for (std::size_t j = 0; j < sel.intervals(); ++j) {
                CHECK(sel.chosen[j] >= std::ldexp(double(j), -depth));
                CHECK(sel.chosen[j] < std::ldexp(double(j + 1), -depth));
            }
            const auto um = assemble_extension(sel);
            double worst = 0;
            for (Index i = 0; i < g.size(); ++i)
                if (sq.omega.test(i)) worst = std::max(worst, std::abs(um[i] - ramp[i]));
            CHECK(worst <= std::ldexp(1.0, -depth));
        }
    }
    SUBCASE("assembly edge cases") {
        const auto sel = select_levels(ramp, sq.omega, 2, identity, {});
        const auto one = assemble_extension(sel, std::vector<CellSet>(4, CellSet::full(g)));
        const auto zero = assemble_extension(sel, std::vector<CellSet>(4, CellSet(g)));
        for (Index i = 0; i < g.size(); ++i) {
            CHECK(one[i] == 1.0);
            CHECK(zero[i] == 0.0);
        }
        CHECK_THROWS_AS(assemble_extension(sel, std::vector<CellSet>(3, CellSet(g))), ContractViolation);
    }
    SUBCASE("u outside [0,1] is rejected") {
        GridFunction bad(g, 2.0);
        CHECK_THROWS_AS(select_levels(bad, sq.omega, 2, identity, {}), InvalidInput);
    }
    SUBCASE("csv headers") {
        const auto sel = select_levels(ramp, sq.omega, 2, identity, {});
        CHECK(selection_csv(sel).rfind("interval,threshold,good,sampled,collar_budget\n", 0) == 0);
        CHECK(profile_csv(level_profile(ramp, sq.omega)).rfind("threshold,perimeter\n", 0) == 0);
    }
}
