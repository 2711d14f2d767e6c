#include "kdvtau/kdv.hpp"

#include "kdvtau/factorial.hpp"
#include "kdvtau/multiseries.hpp"
#include "kdvtau/trace_engine.hpp"

#include <deque>
#include <mutex>

namespace kdvtau {

namespace {

std::mutex omega_mutex;
std::deque<DiffPoly> omega_cache; // index p + 1

DiffPoly lenard_step(const DiffPoly &prev, int p) {
    DiffPoly u = DiffPoly::jet(0);
    DiffPoly ux = DiffPoly::jet(1);
    DiffPoly rhs = u * d_x(prev) * Rational(2) + ux * prev + d_x(prev, 3) * Rational(1, 4);
    return formal_antiderivative(rhs * Rational(1, 2 * p + 1));
}

} // namespace

const DiffPoly &omega(int p) {
    if (p < -1)
        throw std::domain_error("omega index below -1");
    std::lock_guard lock(omega_mutex);
    if (omega_cache.empty())
        omega_cache.emplace_back(Rational(1));
    while (static_cast<int>(omega_cache.size()) <= p + 1) {
        int next = static_cast<int>(omega_cache.size()) - 1;
        omega_cache.push_back(lenard_step(omega_cache.back(), next));
    }
    return omega_cache[p + 1];
}

DiffPoly flow_derivative(const DiffPoly &f, int k) {
    DiffPoly r;
    DiffPoly flow = d_x(omega(k));
    for (int j = 0; j <= f.max_jet(); ++j) {
        DiffPoly part = partial(f, j);
        if (!part.is_zero())
            r += part * flow;
        flow = d_x(flow);
    }
    return r;
}

DiffSeries resolvent(int K, const std::string &var) {
    DiffSeries R(var, -2 * K - 3);
    R.set(0, DiffPoly(1));
    for (int k = 0; k <= K; ++k)
        R.set(-2 * k - 2, omega(k) * Rational(double_factorial(2 * k + 1)));
    return R;
}

DiffSeries riccati_chi(int K, const std::string &var) {
    std::vector<DiffPoly> chi(K + 1);
    if (K >= 1)
        chi[1] = -DiffPoly::jet(0);
    for (int k = 2; k <= K; ++k) {
        DiffPoly acc = d_x(chi[k - 1]);
        for (int i = 1; i + 1 <= k - 1; ++i)
            acc += chi[i] * chi[k - 1 - i];
        chi[k] = acc * Rational(-1, 2);
    }
    DiffSeries s(var, -K);
    s.set(1, DiffPoly(1));
    for (int k = 1; k <= K; ++k)
        s.set(-k, chi[k]);
    return s;
}

DiffSeries x_derivative(const DiffSeries &s, int times) {
    return s.map_coefficients([times](const DiffPoly &c) { return d_x(c, times); });
}

DiffMatrix theta_matrix(int K, const std::string &var) {
    DiffSeries R = resolvent(K, var);
    DiffSeries Rx = x_derivative(R);
    DiffSeries Rxx = x_derivative(R, 2);
    DiffSeries four_u_R = R * DiffSeries::monomial(var, 0, DiffPoly::jet(0) * Rational(4));
    DiffMatrix t;
    t(0, 0) = Rx * Rational(-1, 2);
    t(0, 1) = -R;
    t(1, 0) = (Rxx - R.shifted(2) * Rational(2) + four_u_R) * Rational(1, 2);
    t(1, 1) = Rx * Rational(1, 2);
    return t;
}

DiffMatrix q_matrix(int K, const std::string &var) {
    DiffMatrix q;
    DiffSeries zero(var);
    q(0, 0) = zero;
    q(0, 1) = zero;
    q(1, 0) = resolvent(K, var);
    q(1, 1) = zero;
    return q;
}

std::map<std::pair<int, int>, DiffPoly> two_point_general(int K) {
    using multi::Exps;
    const int max_x = K + 1;
    DiffSeries R = resolvent(K + 1);
    DiffSeries Rx = x_derivative(R);
    DiffSeries chi = riccati_chi(2 * K + 5);
    DiffSeries RE = R * (chi * chi.negated_variable());
    auto r = even_series_to_x(R, max_x), rx = even_series_to_x(Rx, max_x),
         re = even_series_to_x(RE, max_x);

    // X^2 Y^2 [ Rx(X)Rx(Y)/2 - RE(X)R(Y) - R(X)RE(Y) - 1/X - 1/Y ],
    // kept through total degree K + 4.
    const int max_deg = K + 4;
    multi::Graded<DiffPoly> num;
    auto add_outer = [&](const multi::XSeries<DiffPoly> &a, const multi::XSeries<DiffPoly> &b,
                         const Rational &scale) {
        for (const auto &[ea, ca] : a.terms)
            for (const auto &[eb, cb] : b.terms) {
                int deg = ea + eb + 4;
                if (deg > max_deg)
                    break;
                Exps e{};
                e[0] = ea + 2;
                e[1] = eb + 2;
                multi::accumulate(num[deg], multi::pack(e), ca * cb * scale);
            }
    };
    add_outer(rx, rx, Rational(1, 2));
    add_outer(re, r, Rational(-1));
    add_outer(r, re, Rational(-1));
    Exps e1{}, e2{};
    e1[0] = 1, e1[1] = 2;
    e2[0] = 2, e2[1] = 1;
    multi::accumulate(num[3], multi::pack(e1), DiffPoly(-1));
    multi::accumulate(num[3], multi::pack(e2), DiffPoly(-1));

    std::map<std::pair<int, int>, DiffPoly> out;
    for (int deg = 2; deg <= K + 2; ++deg) {
        auto q = multi::divide_by_difference(num[deg + 2], 2, deg + 2, 0, 1);
        q = multi::divide_by_difference(q, 2, deg + 1, 0, 1);
        for (const auto &[key, c] : q) {
            Exps e = multi::unpack(key);
            if (e[0] == 0 || e[1] == 0)
                throw multi::RegularityError("two-point series has a nonnegative power");
            int p = e[0] - 1, qq = e[1] - 1;
            out[{p, qq}] = c * Rational(Integer(1), double_factorial(2 * p + 1) *
                                                        double_factorial(2 * qq + 1));
        }
    }
    return out;
}

} // namespace kdvtau
