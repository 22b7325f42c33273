#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "swsh/errors.hpp"
#include "swsh/trig_poly.hpp"

using swsh::Rational;
using swsh::SourceSeries;
using swsh::TrigPoly;

namespace {

// Exact evaluation at a point where sin and cos are both rational
// (Pythagorean triples), independent of the fold bookkeeping.
Rational eval_at(const TrigPoly& u, const Rational& s, const Rational& c) {
    Rational acc(0);
    for (const auto& [k, v] : u.sin_part()) acc += v * s.pow(2 * k - 1);
    for (const auto& [k, v] : u.cos_part()) acc += v * c * s.pow(2 * k - 1);
    return acc;
}

Rational eval_at(const SourceSeries& f, const Rational& s, const Rational& c) {
    Rational acc(0);
    for (const auto& [p, v] : f.h_part()) acc += v * s.pow(2 * p - 2);
    for (const auto& [p, v] : f.g_part()) acc += v * c * s.pow(2 * p - 2);
    return acc;
}

TrigPoly random_poly(std::mt19937& rng, int top) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    TrigPoly u;
    for (int k = 1; k <= top; ++k) {
        u.add_a(k, Rational(num(rng), den(rng)));
        u.add_b(k, Rational(num(rng), den(rng)));
    }
    return u;
}

}  // namespace

TEST_CASE("Rational parsing and canonical form") {
    CHECK(Rational::parse("6/8").str() == "3/4");
    CHECK(Rational::parse("-3").str() == "-3");
    CHECK_THROWS_AS(Rational::parse("4/-2"), swsh::DomainError);
    CHECK(Rational::parse("+10/4").str() == "5/2");
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), swsh::DomainError);
    CHECK_THROWS_AS(Rational::parse("abc"), swsh::DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), swsh::DomainError);
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("ratio_I") {
    CHECK(swsh::ratio_I(Rational(4), 0) == Rational(5, 4));
    CHECK(swsh::ratio_I(Rational(4), 1) == Rational(15, 8));
    CHECK(swsh::ratio_I(Rational(5), 1) == Rational(8, 5));
    CHECK_THROWS_AS(swsh::ratio_I(Rational(2), 1), swsh::DomainError);
    try {
        swsh::ratio_I(Rational(2), 3);
    } catch (const swsh::DomainError& e) {
        CHECK(std::string(e.what()).find("x - 2") != std::string::npos);
    }

    SUBCASE("step-down property") {
        for (const Rational x : {Rational(5, 3), Rational(7, 2), Rational(11), Rational(23, 3)}) {
            for (int k = 1; k <= 3; ++k) {
                const Rational x2k = x - Rational(2 * k);
                CHECK(swsh::ratio_I(x, k) * x2k / (x + Rational(1 - 2 * k)) == swsh::ratio_I(x, k - 1));
            }
        }
    }
}

TEST_CASE("trig_product_fold") {
    TrigPoly w1;
    w1.add_b(1, Rational(-1, 3));
    const SourceSeries sq = swsh::trig_product_fold(w1, w1);
    CHECK(sq.h(2) == Rational(1, 9));
    CHECK(sq.g_part().empty());
    CHECK(sq.constant() == 0);

    CHECK(swsh::trig_product_fold(TrigPoly{}, w1).is_zero());

    TrigPoly w2;
    w2.add_a(1, Rational(2, 9));
    w2.add_b(1, Rational(-2, 27));
    const SourceSeries twice = swsh::trig_product_fold(w1, w2).scaled(Rational(2));
    CHECK(twice.g(2) == Rational(-4, 27));
    CHECK(twice.h(2) == Rational(4, 81));

    SUBCASE("exact and floating pointwise agreement") {
        std::mt19937 rng(7);
        const Rational s(3, 5), c(4, 5), s2(5, 13), c2(-12, 13);
        for (int trial = 0; trial < 20; ++trial) {
            const TrigPoly u = random_poly(rng, 3);
            const TrigPoly v = random_poly(rng, 2);
            const SourceSeries uv = swsh::trig_product_fold(u, v);
            CHECK(eval_at(uv, s, c) == eval_at(u, s, c) * eval_at(v, s, c));
            CHECK(eval_at(uv, s2, c2) == eval_at(u, s2, c2) * eval_at(v, s2, c2));
            std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
            for (int i = 0; i < 100; ++i) {
                const double t = theta(rng);
                CHECK(std::abs(uv.eval(t) - u.eval(t) * v.eval(t)) <= 1e-13 * (1 + std::abs(uv.eval(t))));
            }
        }
    }
}

TEST_CASE("trig_differentiate") {
    TrigPoly bsin;
    bsin.add_b(1, Rational(5));
    const SourceSeries d1 = swsh::trig_differentiate(bsin);
    CHECK(d1.g(1) == 5);
    CHECK(d1.h_part().empty());

    TrigPoly asc;
    asc.add_a(1, Rational(3));
    const SourceSeries d2 = swsh::trig_differentiate(asc);
    CHECK(d2.h(1) == 3);
    CHECK(d2.h(2) == -6);
    CHECK(d2.g_part().empty());

    TrigPoly s3;
    s3.add_b(2, Rational(1));
    CHECK(swsh::trig_differentiate(s3).g(2) == 3);

    SUBCASE("linearity and finite-difference agreement") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> theta(0.1, std::numbers::pi - 0.1);
        for (int trial = 0; trial < 10; ++trial) {
            const TrigPoly u = random_poly(rng, 3);
            const TrigPoly v = random_poly(rng, 3);
            CHECK(swsh::trig_differentiate(u + v) ==
                  swsh::trig_differentiate(u) + swsh::trig_differentiate(v));
            const SourceSeries du = swsh::trig_differentiate(u);
            for (int i = 0; i < 20; ++i) {
                const double t = theta(rng);
                const double h = 1e-6;
                const double fd = (u.eval(t + h) - u.eval(t - h)) / (2 * h);
                CHECK(std::abs(du.eval(t) - fd) <= 1e-8);
            }
        }
    }
}

TEST_CASE("sin_odd_antiderivative") {
    const double pi = std::numbers::pi;
    CHECK(swsh::sin_odd_antiderivative(1, pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(swsh::sin_odd_antiderivative(1, 0.0) == 0.0);
    CHECK(swsh::sin_odd_antiderivative(2, pi / 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(swsh::sin_odd_antiderivative(1, -0.1), swsh::DomainError);
    CHECK_THROWS_AS(swsh::sin_odd_antiderivative(1, 3.2), swsh::DomainError);
    // Against Simpson quadrature of sin^5 on [0, 2]
    const int n = 2000;
    const double b = 2.0;
    double acc = 0;
    for (int i = 0; i <= n; ++i) {
        const double t = b * i / n;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        acc += w * std::pow(std::sin(t), 5);
    }
    acc *= b / n / 3;
    CHECK(swsh::sin_odd_antiderivative(3, b) == doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("trig_eval") {
    TrigPoly w1;
    w1.add_b(1, Rational(-1, 3));
    CHECK(swsh::trig_eval(w1, std::numbers::pi / 2) == doctest::Approx(-1.0 / 3.0));
    CHECK(swsh::trig_eval(TrigPoly{}, 1.0) == 0.0);
    TrigPoly w2;
    w2.add_a(1, Rational(2, 9));
    w2.add_b(1, Rational(-2, 27));
    CHECK(swsh::trig_eval(w2, std::numbers::pi / 2) == doctest::Approx(-2.0 / 27.0));
}
