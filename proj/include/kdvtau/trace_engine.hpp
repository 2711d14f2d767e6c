// The permutation-trace formula
//
//   F_n = -(1/n) sum_{r in S_n} Tr(M(z_r1)...M(z_rn)) / prod_j (z_rj^2 - z_r(j+1)^2)
//         - [n == 2] (z1^2 + z2^2) / (z1^2 - z2^2)^2
//
// evaluated in X_i = z_i^{-2}.  Summing over necklaces (cycles through
// variable 0) cancels the 1/n.  Every term is brought over the common
// denominator prod_{i<j} (X_i - X_j) (squared for n = 2); the numerator is a
// power series, and exact division recovers F_n one homogeneous degree at a
// time.  A leftover remainder means the sum is not regular on the diagonals.
#pragma once

#include "kdvtau/laurent_series.hpp"
#include "kdvtau/matrix2.hpp"
#include "kdvtau/multiseries.hpp"
#include "kdvtau/rational.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

namespace kdvtau {

template <class C>
using XMatrix = Mat2<multi::XSeries<C>>;

struct TraceOptions {
    int workers = 1;
    // Skip the check that M is known deep enough.
    bool unchecked = false;
};

// An even series in z rewritten in X = z^{-2}, through X^{max_x}.
template <class C>
multi::XSeries<C> even_series_to_x(const LaurentSeries<C> &s, int max_x, bool checked = true) {
    if (checked && !s.known(-2 * max_x))
        throw TruncationError("series too shallow for X^" + std::to_string(max_x));
    multi::XSeries<C> x;
    x.max = max_x;
    for (const auto &[e, c] : s.terms()) {
        if (e % 2 != 0)
            throw std::logic_error("odd exponent in an even series");
        if (-e / 2 <= max_x)
            x.terms.emplace(-e / 2, c);
    }
    return x;
}

template <class C>
XMatrix<C> matrix_to_x(const Mat2<LaurentSeries<C>> &m, int max_x, bool checked = true) {
    XMatrix<C> r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = even_series_to_x(m(i, j), max_x, checked);
    return r;
}

namespace detail {

// Polynomial with integer coefficients in X_0..X_{n-1}.
using IntPoly = std::vector<std::pair<multi::Exps, long>>;

inline IntPoly int_poly_mul_difference(const IntPoly &p, int i, int j) {
    std::map<multi::Key, long> acc;
    for (const auto &[e, c] : p) {
        multi::Exps a = e, b = e;
        a[i] += 1;
        b[j] += 1;
        acc[multi::pack(a)] += c;
        acc[multi::pack(b)] -= c;
    }
    IntPoly r;
    for (const auto &[k, c] : acc)
        if (c != 0)
            r.emplace_back(multi::unpack(k), c);
    return r;
}

inline std::vector<std::vector<int>> necklaces(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    do {
        out.push_back(v);
    } while (std::next_permutation(v.begin() + 1, v.end()));
    return out;
}

inline int denominator_degree(int n) { return n == 2 ? 2 : n * (n - 1) / 2; }

// Sign and cofactor of prod_{i<j}(X_i - X_j) over the cyclic product
// prod_j (X_{v_{j+1}} - X_{v_j}).  For n = 2 the common denominator is
// (X_0 - X_1)^2 and the cofactor is -1.
inline IntPoly cofactor(const std::vector<int> &v) {
    const int n = static_cast<int>(v.size());
    IntPoly p{{multi::Exps{}, 1}};
    if (n == 2) {
        p[0].second = -1;
        return p;
    }
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    long sign = 1;
    for (int j = 0; j < n; ++j) {
        int a = v[j], b = v[(j + 1) % n];
        used[std::min(a, b)][std::max(a, b)] = true;
        // X_b - X_a = (X_lo - X_hi) * (a < b ? -1 : 1)
        if (a < b)
            sign = -sign;
    }
    p[0].second = sign;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!used[i][j])
                p = int_poly_mul_difference(p, i, j);
    return p;
}

} // namespace detail

// Homogeneous components of F_n for the requested degrees.  The entries of M
// are series in X with exponents >= -1 known through X^{max} (see
// trace_matrix_depth).
template <class C>
multi::Graded<C> trace_formula(const XMatrix<C> &M, int n, const std::vector<int> &degrees,
                               const TraceOptions &opt = {}) {
    using multi::Exps;
    using multi::Graded;
    using multi::HomPoly;
    if (n < 2 || n > multi::kMaxVars)
        throw std::invalid_argument("trace formula arity out of range");
    if (degrees.empty())
        return {};
    const int degD = detail::denominator_degree(n);
    const int cof_deg = n == 2 ? 0 : degD - n;
    const int max_f = *std::max_element(degrees.begin(), degrees.end());
    const int max_tr = max_f + degD - 2 * n - cof_deg;
    if (!opt.unchecked)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (M(a, b).max < max_tr + n - 1)
                    throw TruncationError("matrix known through X^" + std::to_string(M(a, b).max) +
                                          ", need X^" + std::to_string(max_tr + n - 1));
    std::vector<bool> want_tr(std::max(max_tr, 0) + n + 1, false);
    for (int d : degrees) {
        int t = d + degD - 2 * n - cof_deg;
        if (t >= -n)
            want_tr[t + n] = true;
    }
    auto necklaces = detail::necklaces(n);
    int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(necklaces.size())));

    // Numerator components by degree, one map per worker.
    std::vector<Graded<C>> partial(workers);
    auto work = [&](int w) {
        Graded<C> &num = partial[w];
        for (std::size_t idx = w; idx < necklaces.size(); idx += workers) {
            const auto &v = necklaces[idx];
            // Tr(M(X_v0) ... M(X_v{n-1})) shifted by X_i^{+1} per variable.
            Graded<C> tr;
            Exps e{};
            std::function<void(int, int, int, int, const C &)> rec =
                [&](int j, int a0, int a, int deg, const C &coeff) {
                    if (j == n) {
                        if (a == a0 && deg + n >= 0 && want_tr[deg + n])
                            multi::accumulate(tr[deg], multi::pack(e), coeff);
                        return;
                    }
                    const int rest_min = -(n - j - 1);
                    for (int b = 0; b < 2; ++b) {
                        if (j == n - 1 && b != a0)
                            continue;
                        for (const auto &[x, c] : M(a, b).terms) {
                            if (deg + x + rest_min > max_tr)
                                break;
                            e[v[j]] = x + 1;
                            rec(j + 1, a0, b, deg + x, j == 0 ? c : coeff * c);
                        }
                    }
                    e[v[j]] = 0;
                };
            for (int a0 = 0; a0 < 2; ++a0)
                rec(0, a0, a0, 0, C());
            // Multiply by prod X_i (second shift) and the cofactor, negate.
            auto cof = detail::cofactor(v);
            for (auto &[deg, comp] : tr) {
                HomPoly<C> &dst = num[deg + 2 * n + cof_deg];
                for (const auto &[key, c] : comp) {
                    Exps base = multi::unpack(key);
                    for (int i = 0; i < n; ++i)
                        base[i] += 1;
                    for (const auto &[ce, k] : cof) {
                        Exps t = base;
                        for (int i = 0; i < n; ++i)
                            t[i] += ce[i];
                        multi::accumulate(dst, multi::pack(t), c * Rational(-k));
                    }
                }
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto &t : pool)
            t.join();
    }
    Graded<C> num = std::move(partial[0]);
    for (int w = 1; w < workers; ++w)
        for (auto &[deg, comp] : partial[w])
            for (auto &[key, c] : comp)
                multi::accumulate(num[deg], key, c);

    if (n == 2) {
        // -(z1^2 + z2^2)/(z1^2 - z2^2)^2 times (X0 - X1)^2 = -X0 X1 (X0 + X1).
        Exps a{}, b{};
        a[0] = 2, a[1] = 1;
        b[0] = 1, b[1] = 2;
        multi::accumulate(num[3], multi::pack(a), C(Rational(-1)));
        multi::accumulate(num[3], multi::pack(b), C(Rational(-1)));
    }

    std::vector<std::pair<int, int>> factors;
    if (n == 2) {
        factors = {{0, 1}, {0, 1}};
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                factors.emplace_back(i, j);
    }

    Graded<C> out;
    std::mutex out_mutex;
    std::vector<int> todo(degrees.begin(), degrees.end());
    auto divide = [&](int w) {
        for (std::size_t idx = w; idx < todo.size(); idx += workers) {
            int d = todo[idx];
            int deg = d + degD;
            HomPoly<C> q;
            if (auto it = num.find(deg); it != num.end())
                q = it->second;
            for (const auto &[i, j] : factors) {
                q = multi::divide_by_difference(q, n, deg, i, j);
                --deg;
            }
            std::lock_guard lock(out_mutex);
            out[d] = std::move(q);
        }
    };
    if (workers == 1) {
        divide(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(divide, w);
        for (auto &t : pool)
            t.join();
    }
    return out;
}

// Highest power of X each entry of M must be known through for
// trace_formula to produce every requested degree.
inline int trace_matrix_depth(int n, int max_degree) {
    const int degD = detail::denominator_degree(n);
    const int cof_deg = n == 2 ? 0 : degD - n;
    const int max_tr = max_degree + degD - 2 * n - cof_deg;
    return max_tr + (n - 1);
}

} // namespace kdvtau
