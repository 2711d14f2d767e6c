// Lenard-Magri recursion, the resolvent, the Riccati series and the matrix
// Theta for a general KdV solution, all with coefficients in DiffPoly.
#pragma once

#include "kdvtau/diffpoly.hpp"
#include "kdvtau/laurent_series.hpp"
#include "kdvtau/matrix2.hpp"

#include <map>
#include <utility>

namespace kdvtau {

using DiffSeries = LaurentSeries<DiffPoly>;
using DiffMatrix = Mat2<DiffSeries>;

// Omega_{p}; p = -1 gives 1.  Memoized, safe for concurrent callers.
const DiffPoly &omega(int p);

// d/dt_k via d/dt_k u_j = d_x^{j+1} Omega_k.
DiffPoly flow_derivative(const DiffPoly &f, int k);

// 1 + sum_{k<=K} (2k+1)!! Omega_k z^{-2k-2}, known through z^{-2K-3}.
DiffSeries resolvent(int K, const std::string &var = "z");

// z + sum_{k=1..K} chi_k z^{-k}, known through z^{-K}.
DiffSeries riccati_chi(int K, const std::string &var = "z");

// Applies d_x coefficientwise.
DiffSeries x_derivative(const DiffSeries &s, int times = 1);

// 1/2 [[-R_x, -2R], [R_xx - 2(z^2 - 2u)R, R_x]] from resolvent(K).
DiffMatrix theta_matrix(int K, const std::string &var = "z");

// [[0, 0], [R, 0]].
DiffMatrix q_matrix(int K, const std::string &var = "z");

// <<tau_p tau_q>> as differential polynomials for all p + q <= K.
std::map<std::pair<int, int>, DiffPoly> two_point_general(int K);

} // namespace kdvtau
