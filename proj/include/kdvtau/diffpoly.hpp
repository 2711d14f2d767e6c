// Polynomials in the jet variables u_0 = u, u_1 = u_x, u_2 = u_xx, ...
#pragma once

#include "kdvtau/rational.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace kdvtau {

// Exponent vector over u_0, u_1, ...; trailing zeros are trimmed.
using JetMonomial = std::vector<int>;

class DiffPoly {
public:
    DiffPoly() = default;
    DiffPoly(const Rational &constant);
    DiffPoly(int constant) : DiffPoly(Rational(constant)) {}

    static DiffPoly jet(int k);
    static DiffPoly monomial(JetMonomial exponents, const Rational &coeff);

    const std::map<JetMonomial, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // Largest jet index present, or -1 for a constant.
    int max_jet() const;
    // Coefficient of the given monomial (zero if absent).
    Rational coefficient(const JetMonomial &m) const;
    // Weight with deg(u_k) = k + 2; -1 if the polynomial is not homogeneous.
    int homogeneous_degree() const;

    DiffPoly &operator+=(const DiffPoly &o);
    DiffPoly &operator-=(const DiffPoly &o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly &b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly &b) { return a -= b; }
    friend DiffPoly operator-(const DiffPoly &a);
    friend DiffPoly operator*(const DiffPoly &a, const DiffPoly &b);
    friend DiffPoly operator*(const DiffPoly &a, const Rational &k);
    DiffPoly &operator*=(const DiffPoly &o) { return *this = *this * o; }

    friend bool operator==(const DiffPoly &a, const DiffPoly &b) { return a.terms_ == b.terms_; }

    std::string to_string() const;
    friend std::ostream &operator<<(std::ostream &os, const DiffPoly &p) {
        return os << p.to_string();
    }

private:
    std::map<JetMonomial, Rational> terms_;
    void add_term(const JetMonomial &m, const Rational &c);
};

int monomial_degree(const JetMonomial &m);
std::string jet_name(int k);

// Total x-derivative: d_x u_k = u_{k+1}.
DiffPoly d_x(const DiffPoly &f);
DiffPoly d_x(const DiffPoly &f, int times);

// Partial derivative with respect to u_k.
DiffPoly partial(const DiffPoly &f, int k);

struct NonIntegrableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// g with d_x g = f and zero constant term.
DiffPoly formal_antiderivative(const DiffPoly &f);

// Substitutes u_j = jets[j]; missing trailing jets are zero.
Rational evaluate_at_jets(const DiffPoly &f, const std::vector<Rational> &jets);

// Drops every monomial containing u_j with j >= 1.
DiffPoly dispersionless(const DiffPoly &f);

// (u, u_x, u_xx, ...) = (0, 1, 0, ...).
const std::vector<Rational> &wk_jets();

} // namespace kdvtau
