#include <numbers>
#include <vector>

#include "doctest.h"
#include "riccati_oracle.hpp"
#include "swsh/closed_forms.hpp"
#include "swsh/errors.hpp"
#include "swsh/series.hpp"

using swsh::Rational;
using swsh::SourceSeries;
using swsh::TrigPoly;

namespace {

using swsh::testing::Point;
using swsh::testing::pointwise_residual;
using swsh::testing::rational_points;

const std::vector<Rational> kHalfIntegers = {Rational(1, 2), Rational(3, 2), Rational(5, 2), Rational(7, 2),
                                             Rational(9, 2)};

}  // namespace

TEST_CASE("seed_order0") {
    CHECK(swsh::seed_order0(Rational(1, 2)).energy == 0);
    CHECK(swsh::seed_order0(Rational(3, 2)).energy == 3);
    const auto o0 = swsh::seed_order0(Rational(1, 2));
    CHECK(o0.w0.eval(std::numbers::pi / 2) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(swsh::seed_order0(Rational(0)), swsh::DomainError);
    CHECK_THROWS_AS(swsh::seed_order0(Rational(-1, 2)), swsh::DomainError);
}

TEST_CASE("seed_order1") {
    const auto o1 = swsh::seed_order1(Rational(1, 2));
    CHECK(o1.w.b(1) == Rational(-1, 3));
    CHECK(o1.energy == Rational(-1, 3));
    CHECK(swsh::seed_order1(Rational(3, 2)).energy == Rational(-1, 5));
    Rational prev(1);
    for (int twice = 1; twice <= 19; twice += 2) {
        const Rational mag = -swsh::seed_order1(Rational(twice, 2)).energy;
        CHECK(mag < prev);
        prev = mag;
    }
}

TEST_CASE("source_series") {
    const auto ser = swsh::build_series(Rational(1, 2), 3);
    const SourceSeries s2 = swsh::source_series(2, ser);
    CHECK(s2.constant() == 1);
    CHECK(s2.h(2) == Rational(-8, 9));
    CHECK(s2.g_part().empty());
    const SourceSeries s3 = swsh::source_series(3, ser);
    CHECK(s3.g(2) == Rational(-4, 27));
    CHECK(s3.h(2) == Rational(4, 81));
    const SourceSeries s4 = swsh::source_series(4, ser);
    CHECK(s4.g(2) == Rational(-8, 405));
    CHECK_THROWS_AS(swsh::source_series(5, ser), swsh::StateError);
}

TEST_CASE("energy_correction and superpotential_order") {
    const Rational m(1, 2);
    const auto ser = swsh::build_series(m, 4);
    const SourceSeries s3 = swsh::source_series(3, ser);
    CHECK(swsh::energy_correction(3, s3, m) == Rational(-64, 1215));
    CHECK(swsh::energy_correction(4, swsh::source_series(4, ser), m) == Rational(-224, 10935));
    CHECK(swsh::energy_correction(2, swsh::source_series(2, ser), m) == Rational(-11, 27));

    const TrigPoly w3 = swsh::superpotential_order(3, s3, Rational(-64, 1215), m);
    CHECK(w3.b(1) == Rational(8, 1215));
    CHECK(w3.b(2) == Rational(-4, 135));
    CHECK(w3.a(1) == Rational(-8, 405));
    const SourceSeries s4 = swsh::source_series(4, ser);
    const TrigPoly w4 = swsh::superpotential_order(4, s4, swsh::energy_correction(4, s4, m), m);
    CHECK(w4.a(2) == Rational(2, 405));
    CHECK(w4.b(2) == Rational(-2, 405));
    CHECK(ser.w(2).a(1) == Rational(2, 9));
    CHECK(ser.w(2).b(1) == Rational(-2, 27));

    SUBCASE("order 2 general m") {
        for (const Rational& mm : kHalfIntegers) {
            const auto s = swsh::build_series(mm, 2);
            const Rational m1 = Rational(2) * mm + Rational(1);
            const Rational m2 = Rational(2) * mm + Rational(2);
            CHECK(s.w(2).a(1) == m1 / m2.pow(2));
            CHECK(s.w(2).b(1) == -m1 / m2.pow(3));
        }
    }
}

TEST_CASE("build_series") {
    const auto s1 = swsh::build_series(Rational(1, 2), 1);
    CHECK(s1.energies() == std::vector<Rational>{Rational(0), Rational(-1, 3)});
    const auto s0 = swsh::build_series(Rational(1, 2), 0);
    CHECK(s0.order() == 0);
    CHECK(s0.energies() == std::vector<Rational>{Rational(0)});
    CHECK_THROWS_AS(s0.w(1), swsh::StateError);
    const auto s4 = swsh::build_series(Rational(1, 2), 4);
    CHECK(s4.energies() == std::vector<Rational>{Rational(0), Rational(-1, 3), Rational(-11, 27),
                                                 Rational(-64, 1215), Rational(-224, 10935)});
    CHECK_THROWS_AS(swsh::build_series(Rational(1, 2), -1), swsh::DomainError);
    CHECK(swsh::build_series(Rational(1, 2), 8).energy(8) == Rational(12416, 119574225));
}

TEST_CASE("riccati_residual") {
    const auto ser = swsh::build_series(Rational(1, 2), 4);
    CHECK(swsh::riccati_residual(ser, 0).is_zero());
    CHECK(swsh::riccati_residual(ser, 1).is_zero());
    CHECK(swsh::riccati_residual(ser, 2).is_zero());
    const SourceSeries printed = swsh::riccati_residual(ser, 2, Rational(-1, 27));
    CHECK(printed.is_constant());
    CHECK(printed.constant() == Rational(-10, 27));
    CHECK_THROWS_AS(swsh::riccati_residual(ser, 5), swsh::StateError);

    SUBCASE("independent pointwise oracle, all m and n <= 12") {
        for (const Rational& m : kHalfIntegers) {
            const auto s = swsh::build_series(m, 12);
            for (int n = 1; n <= 12; ++n) {
                CHECK(swsh::riccati_residual(s, n).is_zero());
                for (const Point& p : rational_points()) CHECK(pointwise_residual(s, n, p) == 0);
            }
        }
    }
    SUBCASE("non-half-integer m") {
        const auto s = swsh::build_series(Rational(2, 3), 10);
        for (int n = 1; n <= 10; ++n) {
            for (const Point& p : rational_points()) CHECK(pointwise_residual(s, n, p) == 0);
        }
    }
}

TEST_CASE("crosscheck_identities and index bounds") {
    const auto ser = swsh::build_series(Rational(1, 2), 4);
    const SourceSeries s4 = swsh::source_series(4, ser);
    CHECK((s4.g(2) - ser.w(4).a(2)) / Rational(5) == ser.w(4).b(2));
    CHECK(Rational(3) * ser.energy(3) / Rational(8) == ser.w(3).a(1));
    CHECK(swsh::source_series(3, ser).g(2) == Rational(-4, 27));
    CHECK(ser.w(3).a(2) == 0);

    for (const Rational& m : kHalfIntegers) {
        const auto s = swsh::build_series(m, 12);
        const auto report = swsh::crosscheck_identities(s);
        CHECK(report.all_hold());
        CHECK(report.checks.size() > 30);
        for (int n = 2; n <= 12; n += 2) {
            CHECK(s.w(n).a(n / 2 + 1) == 0);
            CHECK(s.w(n).b(n / 2 + 1) == 0);
            CHECK(s.w(n).max_cos_index() <= n / 2);
            CHECK(s.w(n).max_sin_index() <= (n + 1) / 2);
        }
    }
}

TEST_CASE("match_order agrees with the general formula for n >= 3") {
    for (const Rational& m : kHalfIntegers) {
        const auto s = swsh::build_series(m, 8);
        for (int n = 3; n <= 8; ++n) {
            const auto direct = swsh::match_order(n, swsh::source_series(n, s), m);
            CHECK(direct.w == s.w(n));
            CHECK(direct.energy == s.energy(n));
        }
    }
}

TEST_CASE("golden low-order closed forms") {
    namespace cf = swsh::closed_forms;
    for (const Rational& m : {Rational(1, 2), Rational(3, 2), Rational(5, 2), Rational(7, 2)}) {
        const auto s = swsh::build_series(m, 4);
        for (int n = 1; n <= 4; ++n) CHECK(s.w(n) == cf::printed_w(n, m));
        CHECK(s.energy(1) == cf::printed_energy(1, m));
        CHECK(s.energy(3) == cf::printed_energy(3, m));
        CHECK(s.energy(4) == cf::printed_energy(4, m));
        CHECK(s.energy(2) == cf::matched_energy2(m));
        CHECK(s.energy(2) != cf::printed_energy(2, m));
    }
    CHECK(cf::printed_energy(2, Rational(1, 2)) == Rational(-1, 27));
}

TEST_CASE("energy_sum") {
    const auto s = swsh::build_series(Rational(1, 2), 4);
    const double b = 0.1;
    const double direct = -b / 3 - 11 * b * b / 27 - 64 * b * b * b / 1215 - 224 * b * b * b * b / 10935;
    CHECK(swsh::energy_sum(s, b, 4) == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("determinism") {
    const auto a = swsh::build_series(Rational(3, 2), 10);
    const auto b = swsh::build_series(Rational(3, 2), 10);
    CHECK(a.energies() == b.energies());
    for (int n = 1; n <= 10; ++n) CHECK(a.w(n) == b.w(n));
}
