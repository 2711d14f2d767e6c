// Sparse multivariate polynomials in s_1, s_2, ... with rational coefficients,
// optionally truncated by weight (deg s_j = j).
#pragma once

#include "kdvtau/rational.hpp"

#include <climits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace kdvtau {

// Exponent vector over s_1, s_2, ...; trailing zeros trimmed.
using SMonomial = std::vector<int>;

int s_weight(const SMonomial &m);

class SparsePoly {
public:
    SparsePoly() = default;
    SparsePoly(const Rational &constant, int weight_cap = INT_MAX);
    SparsePoly(int constant) : SparsePoly(Rational(constant)) {}

    static SparsePoly monomial(SMonomial exponents, const Rational &coeff,
                               int weight_cap = INT_MAX);
    // s_j.
    static SparsePoly variable(int j, int weight_cap = INT_MAX);

    const std::map<SMonomial, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int weight_cap() const { return cap_; }
    Rational coefficient(const SMonomial &m) const;

    // Keeps only monomials of weight <= cap, and remembers the cap.
    SparsePoly capped(int cap) const;

    SparsePoly &operator+=(const SparsePoly &o);
    SparsePoly &operator-=(const SparsePoly &o);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly &b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly &b) { return a -= b; }
    friend SparsePoly operator-(const SparsePoly &a);
    friend SparsePoly operator*(const SparsePoly &a, const SparsePoly &b);
    friend SparsePoly operator*(const SparsePoly &a, const Rational &k);
    SparsePoly &operator*=(const SparsePoly &o) { return *this = *this * o; }

    friend bool operator==(const SparsePoly &a, const SparsePoly &b) { return a.terms_ == b.terms_; }

    std::string to_string() const;
    friend std::ostream &operator<<(std::ostream &os, const SparsePoly &p) {
        return os << p.to_string();
    }

private:
    std::map<SMonomial, Rational> terms_;
    int cap_ = INT_MAX;
    void add_term(const SMonomial &m, const Rational &c);
};

// Substitutes s_j -> -s_j.
SparsePoly negate_variables(const SparsePoly &p);

} // namespace kdvtau
