#include <cmath>
#include <random>

#include "doctest.h"
#include "gmt/errors.hpp"
#include "gmt/gallery.hpp"
#include "gmt/measure.hpp"

using namespace gmt;

TEST_CASE("gallery: kind names round trip") {
    for (DomainKind k : {DomainKind::Square, DomainKind::Disk, DomainKind::SlitDisk, DomainKind::Comb, DomainKind::Cusp,
                         DomainKind::FatCantor3D, DomainKind::RandomPolyomino}) {
        const auto back = parse_kind(kind_name(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(parse_kind("triangle").has_value());
}

TEST_CASE("gallery: determinism") {
    for (DomainKind k : {DomainKind::Square, DomainKind::Disk, DomainKind::SlitDisk, DomainKind::Comb, DomainKind::Cusp,
                         DomainKind::RandomPolyomino}) {
        const DomainSpec spec{k, 6, {}, 7};
        CHECK(make_domain(spec).omega == make_domain(spec).omega);
    }
    const Domain a = make_domain({DomainKind::RandomPolyomino, 6, {}, 1});
    const Domain b = make_domain({DomainKind::RandomPolyomino, 6, {}, 2});
    CHECK_FALSE(a.omega == b.omega);
}

TEST_CASE("gallery: bad requests") {
    CHECK_THROWS_AS(make_domain({DomainKind::Comb, 3, {}, 0}), ResolutionError);
    CHECK_THROWS_AS(make_domain({DomainKind::Square, 0, {}, 0}), InvalidInput);
    CHECK_THROWS_AS(make_domain({DomainKind::Square, 6, {{"bogus", 1.0}}, 0}), InvalidInput);
}

TEST_CASE("gallery: geometry") {
    SUBCASE("square") {
        const Domain d = make_domain({DomainKind::Square, 6, {}, 0});
        CHECK(perimeter(d.omega) == doctest::Approx(4.0));
        CHECK(d.omega.measure() == doctest::Approx(1.0));
    }
    SUBCASE("disk") {
        const Domain d = make_domain({DomainKind::Disk, 8, {}, 0});
        CHECK(d.omega.measure() == doctest::Approx(M_PI / 4).epsilon(0.01));
        CHECK(perimeter(d.omega) == doctest::Approx(4.0).epsilon(0.01));
    }
    SUBCASE("slit disk") {
        const Domain d = make_domain({DomainKind::SlitDisk, 6, {}, 0});
        CHECK((d.omega & d.feature).empty());
        CHECK(d.feature.count() == 64);
    }
    SUBCASE("comb") {
        const Domain d = make_domain({DomainKind::Comb, 7, {}, 0});
        CHECK(d.truncation_index == 5);
        CHECK((d.omega & d.feature).empty());
        CHECK(d.feature.count() == (1 << 7) + 1);
        CHECK(d.info.at("rectangles") == 2 * (4 + 8 + 16 + 32));
    }
    SUBCASE("fat cantor volume") {
        const Domain d = make_domain({DomainKind::FatCantor3D, 6, {}, 0});
        CHECK(d.omega.grid().dim == 3);
        // Monte-Carlo volume of the cube minus the wedge over the truncated product set
        const auto iv = fat_cantor_intervals(d.truncation_index);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        long hits = 0;
        const long n = 1000000;
        for (long k = 0; k < n; ++k) {
            const double x = u(rng), y = u(rng), z = u(rng);
            bool wedge = false;
            if (x >= 0 && y >= 0) wedge = std::abs(z) <= std::hypot(distance_to_intervals(iv, x), distance_to_intervals(iv, y));
            hits += !wedge;
        }
        const double mc = double(hits) / double(n);
        CHECK(std::abs(d.omega.measure() / 8.0 - mc) <= 0.05);
    }
}

TEST_CASE("fat cantor intervals") {
    const auto iv = fat_cantor_intervals(1);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].second == doctest::Approx(0.375));
    CHECK(iv[1].first == doctest::Approx(0.625));
    double total = 0;
    for (const auto& [a, b] : fat_cantor_intervals(8)) total += b - a;
    CHECK(total > 0.5);
    CHECK(distance_to_intervals(iv, 0.5) == doctest::Approx(0.125));
}

TEST_CASE("density classification") {
    const Domain slit = make_domain({DomainKind::SlitDisk, 8, {}, 0});
    const Domain sq = make_domain({DomainKind::Square, 8, {}, 0});
    const double h = slit.omega.grid().spacing();
    const std::vector<double> radii{8 * h, 16 * h, 32 * h};
    const DensityClass c = classify_density(slit.omega, radii);
    CHECK(high_density_fraction(c, slit.feature) >= 0.9);
    // away from the tip every slit cell is high density
    for (Index i : slit.feature.members())
        if (slit.omega.grid().center(i)[0] < 0.75) CHECK(c.high_density_boundary.test(i));
    CHECK(classify_density(sq.omega, radii).fraction < 0.2);
    double prev = 1.0;
    for (int level : {5, 6, 7, 8}) {
        const double f = classify_density(make_domain({DomainKind::Square, level, {}, 0}).omega, {0.125, 0.25}).fraction;
        CHECK(f <= prev);
        prev = f;
    }
    CHECK(prev < 0.05);
    CHECK_THROWS_AS(classify_density(sq.omega, {h}), ScaleError);
}
