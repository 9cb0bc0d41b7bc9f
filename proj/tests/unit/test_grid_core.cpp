#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "gmt/components.hpp"
#include "gmt/distance.hpp"
#include "gmt/errors.hpp"
#include "gmt/gallery.hpp"
#include "gmt/mask_io.hpp"
#include "gmt/measure.hpp"
#include "gmt/parallel.hpp"
#include "oracles.hpp"

using namespace gmt;

namespace {

CellSet box(const Grid& g, int x0, int y0, int x1, int y1) {
    CellSet s(g);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) s.set(g.index(x, y));
    return s;
}

}  // namespace

TEST_CASE("grid spacing is dyadic and cell geometry is consistent") {
    const Grid g = Grid::make(2, 5, {20, 12, 1}, {-1.0, 0.5, 0.0});
    CHECK(g.spacing() == std::ldexp(1.0, -5));
    CHECK(g.size() == 240);
    for (Index i : {Index(0), Index(17), Index(239)}) CHECK(g.index(g.coords(i)) == i);
    const auto c = g.center(g.index(3, 2));
    CHECK(c[0] == doctest::Approx(-1.0 + 3.5 / 32));
    CHECK(c[1] == doctest::Approx(0.5 + 2.5 / 32));
    CHECK_THROWS_AS(Grid::make(4, 3, {2, 2, 2}), InvalidInput);
    CHECK_THROWS_AS(Grid::make(2, 0, {2, 2, 1}), InvalidInput);
    CHECK_THROWS_AS(Grid::make(2, 3, {0, 2, 1}), InvalidInput);
}

TEST_CASE("grid functions reject non-finite values") {
    const Grid g = Grid::make(2, 1, {2, 2, 1});
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>{0, 1, NAN, 2}), InvalidInput);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>{0, 1, INFINITY, 2}), InvalidInput);
}

TEST_CASE("edge measure validates weights and restricts by endpoint") {
    const Grid g = Grid::make(2, 2, {4, 4, 1});
    CHECK_THROWS_AS(EdgeMeasure(g, {{0, 1, -1.0}}), InvalidInput);
    const EdgeMeasure m(g, {{0, 1, 0.5}, {5, 6, 0.25}});
    CHECK(m.total() == 0.75);
    CellSet r(g);
    r.set(1);
    CHECK(m.restrict(r).total() == 0.5);
}

TEST_CASE("load_mask: pbm, png and layered text") {
    SUBCASE("4x4 all ones") {
        const CellSet s = parse_mask("P1\n4 4\n1 1 1 1\n1 1 1 1\n1 1 1 1\n1 1 1 1\n");
        CHECK(s.count() == 16);
        CHECK(s.grid().level == 2);
    }
    SUBCASE("3x5 infers level 3") {
        const CellSet s = parse_mask("P1\n# comment\n3 5\n100\n010\n001\n000\n111\n");
        CHECK(s.grid().level == 3);
        CHECK(s.grid().cells[0] == 3);
        CHECK(s.grid().cells[1] == 5);
        CHECK(s.count() == 6);
        // row 0 of the image is the top row
        CHECK(s.test(s.grid().index(0, 4)));
        CHECK(s.test(s.grid().index(2, 0)));
    }
    SUBCASE("zero size") { CHECK_THROWS_AS(parse_mask("P1\n0 0\n"), InvalidInput); }
    SUBCASE("malformed names the byte offset") {
        try {
            parse_mask("P1\n2 2\n1 x 1 1\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 9);
        }
    }
    SUBCASE("binary pbm and png round trip") {
        std::mt19937_64 rng(3);
        const CellSet s = gen::speckle(rng, Grid::make(2, 4, {13, 9, 1}), 0.4);
        CHECK(parse_mask(encode_pbm(s, true)) == s);
        CHECK(parse_mask(encode_pbm(s, false)) == s);
        const auto dir = std::filesystem::temp_directory_path() / "gmt_mask_test";
        std::filesystem::create_directories(dir);
        save_png(s, dir / "m.png");
        CHECK(load_mask(dir / "m.png") == s);
        std::filesystem::remove_all(dir);
    }
    SUBCASE("layers") {
        const CellSet s = parse_mask("##.\n.#.\n\n...\n..#\n", MaskFormat::Layers);
        CHECK(s.grid().dim == 3);
        CHECK(s.count() == 4);
        CHECK(parse_mask(encode_layers(s), MaskFormat::Layers) == s);
    }
}

TEST_CASE("total variation examples") {
    const Grid g = Grid::make(2, 1, {2, 2, 1});
    // image row [[0,1],[0,0]] with the first row on top
    GridFunction u(g);
    u[g.index(1, 1)] = 1.0;
    CHECK(total_variation_value(u) == 0.5 + 0.5);
    CHECK(total_variation(u).value == 1.0);

    const Grid h = Grid::make(2, 6, {64, 64, 1});
    const CellSet left = box(h, 0, 0, 32, 64);
    CHECK(total_variation_value(GridFunction::indicator(left)) == 1.0);
    CHECK(total_variation_value(GridFunction(h, 3.0)) == 0.0);
    CHECK_THROWS_AS(total_variation(u, CellSet(h)), ContractViolation);
}

TEST_CASE("perimeter examples") {
    const Grid g = Grid::make(2, 5, {48, 48, 1});
    CHECK(perimeter(box(g, 8, 8, 40, 40)) == 4.0);
    CHECK(perimeter(CellSet(g)) == 0.0);
    const Grid d = Grid::make(2, 8, {256, 256, 1}, {-0.5, -0.5, 0.0});
    CellSet disk(d);
    for (Index i = 0; i < d.size(); ++i) {
        const auto c = d.center(i);
        disk.set(i, c[0] * c[0] + c[1] * c[1] < 1.0 / 16);
    }
    const double p = perimeter(disk);
    CHECK(p == oracle::perimeter(disk));
    CHECK(std::abs(p - 2.0) <= 0.05);
}

TEST_CASE("property: perimeter and TV agree with the face-count oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Grid g = gen::square_grid(24 + trial % 9);
        const CellSet s = gen::polyomino(rng, g);
        CHECK(perimeter(s) == oracle::perimeter(s));
        const GridFunction u = gen::integer_field(rng, g, 7);
        CHECK(total_variation_value(u) == doctest::Approx(oracle::total_variation(u)).epsilon(1e-12));
        CHECK(total_variation(u).value == doctest::Approx(total_variation_value(u)).epsilon(1e-12));
        CHECK(perimeter(s, CellSet::full(g)) == perimeter(s));
    }
}

TEST_CASE("closure and interior match the brute-force morphology") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const Grid g = gen::square_grid(20);
        const CellSet s = gen::speckle(rng, g, 0.5);
        CHECK(closure(s) == oracle::dilate(s));
        CHECK(interior(s) == oracle::erode(s));
        CHECK(inner_boundary(s) == s - oracle::erode(s));
        CHECK(outer_boundary(s) == oracle::dilate(s) - s);
    }
}

TEST_CASE("density_at") {
    const Grid g = Grid::make(2, 7, {128, 128, 1});
    const double h = g.spacing();
    SUBCASE("half plane") {
        const CellSet half = box(g, 0, 0, 64, 128);
        for (double r : {4 * h, 10 * h, 25 * h}) {
            const double d = density_at(half, g.index(63, 64), {r})[0];
            CHECK(std::abs(d - 0.5) <= 2 * h / r);
        }
    }
    SUBCASE("whole grid") { CHECK(density_at(CellSet::full(g), g.index(64, 64), {8 * h})[0] == 1.0); }
    SUBCASE("quadrant corner") {
        const CellSet q = box(g, 64, 64, 128, 128);
        for (double r : {6 * h, 20 * h}) CHECK(std::abs(density_at(q, g.index(64, 64), {r})[0] - 0.25) <= 2 * h / r);
    }
    SUBCASE("scale error") { CHECK_THROWS_AS(density_at(CellSet(g), 0, {h}), ScaleError); }
    SUBCASE("ball counts match a full scan") {
        std::mt19937_64 rng(2);
        const CellSet s = gen::speckle(rng, Grid::make(2, 5, {32, 32, 1}), 0.3);
        const BallCounter bc(s);
        for (Index c : {Index(0), Index(100), Index(527), Index(1023)})
            for (double r : {1.0, 2.5, 7.0, 40.0}) CHECK(bc.count(c, r).in_set == oracle::ball_count(s, c, r));
    }
}

TEST_CASE("measure_density_scan") {
    SUBCASE("square stays above one half") {
        const Domain sq = make_domain({DomainKind::Square, 7, {}, 0});
        const double h = sq.omega.grid().spacing();
        const auto s = measure_density_scan(sq.omega, 1000, {4 * h, 8 * h, 16 * h, 32 * h});
        CHECK(s.c_hat >= 0.5);
        CHECK(s.worst_point >= 0);
    }
    SUBCASE("isolated cell") {
        const Grid g = Grid::make(2, 5, {32, 32, 1});
        CellSet one(g);
        one.set(g.index(16, 16));
        const auto s = measure_density_scan(one, 1, {4 * g.spacing()});
        CHECK(s.c_hat == 1.0 / 16);
        CHECK(s.worst_point == g.index(16, 16));
    }
    SUBCASE("errors") {
        const Grid g = Grid::make(2, 5, {32, 32, 1});
        CHECK_THROWS_AS(measure_density_scan(CellSet(g), 1, {0.25}), InvalidInput);
        CHECK_THROWS_AS(measure_density_scan(box(g, 2, 2, 9, 9), 1, {2 * g.spacing()}), ScaleError);
    }
}

TEST_CASE("poincare_ratio") {
    for (int level : {6, 7}) {
        const int n = 1 << level;
        const Grid g = Grid::make(2, level, {n, n, 1});
        GridFunction ramp(g);
        for (Index i = 0; i < g.size(); ++i) ramp[i] = g.center(i)[0];
        CHECK(std::abs(poincare_ratio(ramp, CellSet::full(g)) - 0.25) <= 0.02);
        CHECK_THROWS_AS(poincare_ratio(GridFunction(g, 1.0), CellSet::full(g)), UndefinedRatio);
    }
    const Grid g = Grid::make(2, 4, {16, 8, 1});
    const CellSet two = CellSet::full(g);
    const double r = poincare_ratio(GridFunction::indicator(box(g, 0, 0, 8, 8)), two);
    CHECK(r <= 1.0);
    CHECK(r == doctest::Approx(0.5));
}

TEST_CASE("complement components") {
    const Grid g = Grid::make(2, 5, {32, 32, 1});
    SUBCASE("square") {
        const auto lab = complement_components(box(g, 8, 8, 24, 24));
        REQUIRE(lab.count() == 1);
        CHECK(lab.unbounded[0]);
    }
    SUBCASE("annulus") {
        const auto lab = complement_components(box(g, 4, 4, 28, 28) - box(g, 10, 10, 22, 22));
        REQUIRE(lab.count() == 2);
        CHECK(lab.unbounded[0] != lab.unbounded[1]);
        const int hole = lab.unbounded[0] ? 1 : 0;
        CHECK(lab.components[std::size_t(hole)].size() == 10 * 10);
    }
    SUBCASE("components partition the complement of the closure") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 40; ++trial) {
            const CellSet s = gen::polyomino(rng, gen::square_grid(40));
            if (s.empty()) continue;
            const auto lab = complement_components(s);
            const CellSet outside = oracle::dilate(s).complement();
            CellSet un(s.grid());
            for (std::size_t k = 0; k < lab.count(); ++k) {
                const CellSet c = lab.component_set(k);
                CHECK((c & un).empty());
                CHECK(oracle::count_face_components(c) == 1);
                un |= c;
            }
            CHECK(un == outside);
            CHECK(int(lab.count()) == oracle::count_face_components(outside));
        }
    }
}

TEST_CASE("comb complement counts against a flood-fill oracle") {
    for (int level : {6, 8}) {
        const Domain comb = make_domain({DomainKind::Comb, level, {}, 0});
        const auto lab = complement_components(comb.omega);
        int rects = 0;
        for (int i = 2; i <= comb.truncation_index; ++i) rects += 2 << i;
        // raw complement: rectangles, slit and outside
        CHECK(oracle::count_face_components(comb.omega.complement()) == rects + 2);
        // the slit lies inside the closure of omega and is absorbed
        CHECK(int(lab.count()) == rects + 1);
    }
}

TEST_CASE("squared distance transform matches brute force") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Grid g = Grid::make(2, 5, {23, 17, 1});
        const CellSet sites = gen::speckle(rng, g, 0.05);
        const auto d2 = squared_distance_transform(sites, false);
        for (Index i = 0; i < g.size(); ++i) {
            double best = 1e30;
            const Coord c = g.coords(i);
            for (Index j = 0; j < g.size(); ++j)
                if (sites.test(j)) {
                    const Coord p = g.coords(j);
                    best = std::min(best, double((p[0] - c[0]) * (p[0] - c[0]) + (p[1] - c[1]) * (p[1] - c[1])));
                }
            if (best < 1e30) CHECK(d2[std::size_t(i)] == best);
        }
    }
}

TEST_CASE("parallel sums do not depend on the worker count") {
    std::vector<double> v(100000);
    std::mt19937_64 rng(1);
    for (double& x : v) x = std::uniform_real_distribution<double>(-1, 1)(rng);
    auto run = [&] {
        return parallel_sum(Index(v.size()), 1000, [&](Index b, Index e) {
            double s = 0;
            for (Index i = b; i < e; ++i) s += v[std::size_t(i)];
            return s;
        });
    };
    setenv("GMT_THREADS", "1", 1);
    const double one = run();
    setenv("GMT_THREADS", "7", 1);
    const double seven = run();
    unsetenv("GMT_THREADS");
    CHECK(one == seven);
    CHECK_THROWS_AS(parallel_blocks(10, 1, [](Index b, Index) {
                        if (b == 5) throw InvalidInput("boom");
                    }),
                    InvalidInput);
}
