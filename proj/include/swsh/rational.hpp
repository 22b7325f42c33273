#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

namespace swsh {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value type over GMP's mpq_class. Every series coefficient in the
/// library is a Rational; nothing is ever rounded until an explicit
/// conversion to a floating type.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor): integers promote freely
    Rational(long n, long d);
    explicit Rational(mpq_class v);

    /// Parses "p/q" or "p" (optional leading sign). Throws DomainError on malformed input or q = 0.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const noexcept { return v_; }
    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    bool is_zero() const noexcept { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const noexcept { return sgn(v_); }

    /// "p/q", or "p" when q = 1.
    std::string str() const;

    double to_double() const { return v_.get_d(); }

    /// Conversion to an arbitrary floating type constructible from a decimal string.
    template <class Real>
    Real to() const {
        if constexpr (std::is_same_v<Real, double>) {
            return to_double();
        } else {
            return Real(numerator_str()) / Real(denominator_str());
        }
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow(int e) const;

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace swsh
