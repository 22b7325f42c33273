#include "swsh/closed_forms.hpp"

#include "swsh/errors.hpp"

namespace swsh::closed_forms {

namespace {

struct MFactors {
    Rational two_m, m1, m2, m3, m4;  // 2m, 2m+1, 2m+2, 2m+3, 2m+4
    explicit MFactors(const Rational& m)
        : two_m(Rational(2) * m),
          m1(two_m + Rational(1)),
          m2(two_m + Rational(2)),
          m3(two_m + Rational(3)),
          m4(two_m + Rational(4)) {}
};

}  // namespace

Rational printed_energy(int n, const Rational& m) {
    const MFactors f(m);
    const Rational quad = Rational(2) * m * m + Rational(9) * m + Rational(2);
    switch (n) {
        case 1:
            return Rational(-1) / f.m2;
        case 2:
            return -(Rational(4) * m * m + Rational(10) * m - Rational(5)) / f.m2.pow(3);
        case 3:
            return -(Rational(4) * f.m1.pow(2) * f.m3) / (f.m2.pow(5) * f.m4);
        case 4:
            return -(Rational(2) * f.m1.pow(2) * f.m3 * quad) / (f.m2.pow(7) * f.m4);
        default:
            throw DomainError("printed_energy: only orders 1..4 are printed, got " + std::to_string(n));
    }
}

Rational matched_energy2(const Rational& m) {
    const MFactors f(m);
    return -(Rational(4) * m * m + Rational(10) * m + Rational(5)) / f.m2.pow(3);
}

TrigPoly printed_w(int n, const Rational& m) {
    const MFactors f(m);
    const Rational quad = Rational(2) * m * m + Rational(9) * m + Rational(2);
    TrigPoly w;
    switch (n) {
        case 1:
            w.add_b(1, Rational(-1) / f.m2);
            break;
        case 2:
            w.add_b(1, -f.m1 / f.m2.pow(3));
            w.add_a(1, f.m1 / f.m2.pow(2));
            break;
        case 3:
            w.add_b(1, Rational(4) * f.m1 / (f.m2.pow(5) * f.m4));
            w.add_b(2, Rational(-2) * f.m1 / (f.m2.pow(3) * f.m4));
            w.add_a(1, Rational(-4) * f.m1 / (f.m2.pow(4) * f.m4));
            break;
        case 4:
            w.add_b(1, Rational(2) * f.m1 * quad / (f.m2.pow(7) * f.m4));
            w.add_a(1, Rational(-2) * f.m1 * quad / (f.m2.pow(6) * f.m4));
            w.add_b(2, Rational(-6) * m * f.m1 / (f.m2.pow(5) * f.m4));
            w.add_a(2, Rational(2) * m * f.m1 / (f.m2.pow(4) * f.m4));
            break;
        default:
            throw DomainError("printed_w: only orders 1..4 are printed, got " + std::to_string(n));
    }
    return w;
}

PrintedFlow printed_flow(const Rational& m, const Rational& a00, const Rational& b00, const Rational& b11,
                         const Rational& b21, const Rational& a21) {
    const Rational x = (Rational(2) * m + Rational(1)) * a00;  // (2m+1) A_{0,0}
    const Rational x3 = x + Rational(3);
    const Rational x4 = x + Rational(4);
    PrintedFlow out;
    out.c00 = a00 + Rational(2) / (Rational(2) * m + Rational(1));
    out.d00 = b00;
    out.r0 = x + Rational(1);
    out.d11_factor = (x - Rational(1)) / x3;
    out.r1 = Rational(-4) * b00 * b11 / x3;
    const Rational b11sq = b11 * b11;
    out.d21 = (x - Rational(1)) / x3 * b21 + Rational(6) * b00 * b21 / (x3 * x4) -
              Rational(8) * (x + Rational(1)) * b00 * b11sq / (x3.pow(3) * x4);
    out.c21 = Rational(8) * (x + Rational(1)) * b11sq / (x3.pow(3) * x4) + (x - Rational(2)) / x4 * a21;
    const Rational big_a =
        (Rational(8) * b00 * b00 - Rational(8) * (x - Rational(1)) * x3) / (x3.pow(3) * x4);
    const Rational big_b = (Rational(6) * b00 * b00 - Rational(2) * (x - Rational(1)) * x3) / (x3 * x4);
    out.r2 = Rational(-4) * b00 * b21 / x3 + big_a * b11sq + big_b * a21;
    return out;
}

}  // namespace swsh::closed_forms
