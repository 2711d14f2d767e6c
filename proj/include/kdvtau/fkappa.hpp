// Generating functions F^kappa_n of the higher Weil-Petersson volumes built
// from the deformed wave functions.
#pragma once

#include "kdvtau/laurent_series.hpp"
#include "kdvtau/matrix2.hpp"
#include "kdvtau/rational.hpp"
#include "kdvtau/sparse_poly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace kdvtau {

using SSeries = LaurentSeries<SparsePoly>;

struct DeformedSeries {
    SSeries A;
    SSeries B;
};

// A(z;s), B(z;s) through s-weight `weight`, known through z^{floor}.
DeformedSeries deformed_series(int weight, int floor);

// 1/2 [[-(A Bbar + Abar B), -2 A Abar], [2 B Bbar, A Bbar + Abar B]].
Mat2<SSeries> kappa_m_matrix(int weight, int floor);

using FKappaKey = std::pair<SMonomial, std::vector<int>>;

// Coefficients of s^d prod_i z_i^{-2k_i-2} in F^kappa_n for s-weight <= weight
// and all k_i <= k_max.
std::map<FKappaKey, Rational> f_kappa_n(int n, int weight, int k_max, int workers = 1);

} // namespace kdvtau
