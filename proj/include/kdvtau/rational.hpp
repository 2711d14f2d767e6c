// Exact rational numbers backed by GMP.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace kdvtau {

using Integer = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(const Integer &v) : q_(v) {}
    Rational(const Integer &num, const Integer &den);
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class &q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "-p" or "p/q" in decimal.
    static Rational parse(std::string_view text);

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    const mpq_class &raw() const { return q_; }

    std::string to_string() const;

    Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
    Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
    Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
        return os << r.to_string();
    }

private:
    mpq_class q_;
};

Rational pow(const Rational &base, unsigned exponent);

} // namespace kdvtau
