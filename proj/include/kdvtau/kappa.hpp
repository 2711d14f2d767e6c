// Mixed psi-kappa intersection numbers and Weil-Petersson volume coefficients.
#pragma once

#include "kdvtau/partition.hpp"
#include "kdvtau/rational.hpp"

#include <optional>
#include <vector>

namespace kdvtau {

// Genus from sum k_i + |lambda| = 3g - 3 + n.
std::optional<int> mixed_genus(const Partition &lambda, const std::vector<int> &ks);

// <kappa_lambda tau_k1 ... tau_kn> as an intersection number.  Each residue
// at w = infinity against w^{2m+3}/(2m+3)!! selects tau_{m+1} with a factor -1.
Rational mixed_correlator(const Partition &lambda, const std::vector<int> &ks);

// Coefficient of s_lambda prod (2k_i+1)!! z_i^{-2k_i-2} in F^kappa_n: the
// intersection number divided by m(lambda)!.
Rational mixed_s_coefficient(const Partition &lambda, const std::vector<int> &ks);

// <kappa_j> with no psi insertions, from a residue of the one-point function.
Rational kappa_from_one_point(int j);

struct WPEntry {
    int d = 0;
    std::vector<int> ks;
    // <kappa_1^d tau_k1 ... tau_kn>_g.
    Rational value;
    // Coefficient of s^d prod z_i^{-2k_i-2} in W_{g,n}.
    Rational w_coefficient;
    // Coefficient of prod L_i^{2k_i} in v_{g,n}.
    Rational v_coefficient;
};

// All entries with d + sum k_i = 3g - 3 + n, ordered tuples, nonzero only.
std::vector<WPEntry> wp_volume_coefficients(int g, int n);

} // namespace kdvtau
