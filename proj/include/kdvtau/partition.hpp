// Integer partitions and the monomial-to-power-sum transition matrices.
#pragma once

#include "kdvtau/rational.hpp"
#include "kdvtau/sparse_poly.hpp"

#include <string>
#include <vector>

namespace kdvtau {

class Partition {
public:
    Partition() = default;
    // Parts in any order; sorted into weakly decreasing order.  Zero or
    // negative parts are rejected.
    explicit Partition(std::vector<int> parts);

    const std::vector<int> &parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const;
    int multiplicity(int i) const;
    // prod_i m_i!
    Integer multiplicity_factorial() const;
    // s_lambda = prod_j s_j^{m_j}, exponent vector over s_1, s_2, ...
    SMonomial s_exponents() const;
    std::string to_string() const;

    friend bool operator==(const Partition &, const Partition &) = default;
    friend auto operator<=>(const Partition &, const Partition &) = default;

private:
    std::vector<int> parts_;
};

// Partitions of n in reverse lexicographic order: (n), (n-1,1), ...
std::vector<Partition> partitions_of(int n);

// L_{lambda mu}: number of maps from the parts of lambda onto the parts of mu
// that sum to each part of mu.
Integer L_entry(const Partition &lambda, const Partition &mu);

// kappa_{lambda mu} = L_{lambda mu} / m(mu)!, rows and columns in
// partitions_of(n) order.
std::vector<std::vector<Integer>> kappa_matrix(int n);

// h_0..h_K with sum h_k x^k = exp(sum s_j x^j).
std::vector<SparsePoly> h_polynomials(int K, int weight_cap = INT_MAX);

Integer bell_number(int k);

} // namespace kdvtau
