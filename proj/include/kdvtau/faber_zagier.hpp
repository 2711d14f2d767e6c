// The Faber-Zagier series, the Witten-Kontsevich M-matrix and one-point
// intersection numbers.
#pragma once

#include "kdvtau/laurent_series.hpp"
#include "kdvtau/matrix2.hpp"
#include "kdvtau/rational.hpp"

namespace kdvtau {

using RationalMatrix = Mat2<RationalSeries>;

struct FaberZagier {
    // c(z) = sum_k C_k z^{-3k},  q(z) = sum_k (1+6k)/(1-6k) C_k z^{-3k}.
    RationalSeries c;
    RationalSeries q;
};

// C_k = (-1)^k (6k)! / (288^k (3k)! (2k)!).
Rational faber_zagier_coefficient(int k);

// Both series through z^{-3K}.
FaberZagier fz_series(int K);

// Closed-form M in z, with all terms through genus K.
RationalMatrix m_matrix(int K);

// M rebuilt from the wave functions:
//   1/2 [[z(c qbar - cbar q), -2 c cbar], [-2 z^2 q qbar, -z(c qbar - cbar q)]].
RationalMatrix m_from_fz(int K);

// The one-point function F_1(z) through z^{-(6G-2)}, computed from the wave
// functions c and zq.
RationalSeries one_point_series(int G);

// <tau_{3g-2}>_g.
Rational one_point(int g);

} // namespace kdvtau
