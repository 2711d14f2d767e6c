// Time derivatives of the Witten-Kontsevich wave function at t = 0, the
// deformed wave functions of the higher Weil-Petersson solution and the
// generalized Kac-Schwarz operator.
#pragma once

#include "kdvtau/diffpoly.hpp"
#include "kdvtau/factorial.hpp"
#include "kdvtau/laurent_series.hpp"
#include "kdvtau/partition.hpp"
#include "kdvtau/sparse_poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace kdvtau {

// sum_i z^i a_i psi + sum_i z^i b_i psi_x with differential-polynomial
// coefficients; psi_xx is eliminated through psi_xx = (z^2 - 2u) psi.
struct WaveExpr {
    std::map<int, DiffPoly> psi;
    std::map<int, DiffPoly> psi_x;

    static WaveExpr wave();
    static WaveExpr wave_x();
};

// d/dt_k of the expression along the KdV flow.
WaveExpr t_derivative(const WaveExpr &w, int k);

// P(z) c(z) + Q(z) q(z) with polynomial P, Q.
struct CQForm {
    std::map<int, Rational> c;
    std::map<int, Rational> q;

    // Laurent expansion known through z^{floor}.
    RationalSeries expand(int floor) const;
    std::string to_string() const;
    friend bool operator==(const CQForm &, const CQForm &) = default;
    CQForm &operator+=(const CQForm &o);
    friend CQForm operator*(const CQForm &a, const Rational &k);
};

// Evaluates at the jets (0, 1, 0, ...) with psi -> c(z), psi_x -> z q(z).
CQForm evaluate_wk(const WaveExpr &w);

struct WaveColumn {
    CQForm psi;
    CQForm psi_x;
};

// d_{t_{mu_1+1}} ... d_{t_{mu_l+1}} of (psi, psi_x) at t = 0.
WaveColumn multi_flow_wave_derivative(const Partition &mu);

// The same for explicit times t_{k_1}, ..., t_{k_m}.
WaveColumn wave_time_derivative(const std::vector<int> &times);

struct DeformedWavePair {
    Partition lambda;
    CQForm A;
    CQForm B;
};

// Coefficients A^lambda, B^lambda of s_lambda in A(z;s) = psi^kappa(z;0;s)
// and B(z;s) = psi^kappa_x(z;0;s).
DeformedWavePair deformed_wave(const Partition &lambda);

// Every pair with |lambda| <= weight.
std::vector<DeformedWavePair> deformed_waves(int weight);

// S_z = z^{-1} d_z - 1/(2z^2) - sum_k c_k z^{2k-1}/(2k-1)!!.
template <class C>
struct KSOperator {
    std::vector<C> shifts;
};

KSOperator<Rational> wk_ks_operator();

// c_0 = 0, c_k = h_{k-1}(-s) for k = 1..K+1, truncated at s-weight `weight_cap`.
KSOperator<SparsePoly> wp_ks_operator(int K, int weight_cap);

template <class C>
LaurentSeries<C> kac_schwarz_apply(const KSOperator<C> &op, const LaurentSeries<C> &f) {
    const std::string &var = f.variable();
    LaurentSeries<C> r = f.derivative().shifted(-1) - f.shifted(-2) * Rational(1, 2);
    for (std::size_t k = 0; k < op.shifts.size(); ++k) {
        if (op.shifts[k].is_zero())
            continue;
        Rational scale(Integer(1), double_factorial(2L * static_cast<long>(k) - 1));
        auto mono = LaurentSeries<C>::monomial(var, 2 * static_cast<int>(k) - 1, op.shifts[k] * scale);
        r -= mono * f;
    }
    return r;
}

} // namespace kdvtau
