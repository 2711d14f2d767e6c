// Homogeneous components of multivariate power series and exact division by
// differences of variables.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kdvtau::multi {

constexpr int kMaxVars = 8;
constexpr int kMaxExponent = 255;

using Key = std::uint64_t;
using Exps = std::array<int, kMaxVars>;

inline Key pack(const Exps &e) {
    Key k = 0;
    for (int i = kMaxVars - 1; i >= 0; --i) {
        if (e[i] < 0 || e[i] > kMaxExponent)
            throw std::out_of_range("exponent outside packable range");
        k = (k << 8) | static_cast<Key>(e[i]);
    }
    return k;
}

inline Exps unpack(Key k) {
    Exps e{};
    for (int i = 0; i < kMaxVars; ++i) {
        e[i] = static_cast<int>(k & 0xff);
        k >>= 8;
    }
    return e;
}

struct RegularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class C>
using HomPoly = std::unordered_map<Key, C>;

// Degree -> homogeneous component.
template <class C>
using Graded = std::map<int, HomPoly<C>>;

template <class C>
void accumulate(HomPoly<C> &p, Key k, const C &c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = p.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            p.erase(it);
    }
}

template <class C>
const C *find(const HomPoly<C> &p, Key k) {
    auto it = p.find(k);
    return it == p.end() ? nullptr : &it->second;
}

// Calls f(exps) for every composition of d into n nonnegative parts.
template <class F>
void for_each_composition(int n, int d, F &&f) {
    Exps e{};
    auto rec = [&](auto &self, int var, int left) -> void {
        if (var == n - 1) {
            e[var] = left;
            f(e);
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[var] = v;
            self(self, var + 1, left - v);
        }
        e[var] = 0;
    };
    if (n == 0) {
        if (d == 0)
            f(e);
        return;
    }
    rec(rec, 0, d);
}

// Quotient of a degree-`deg_p` homogeneous polynomial by (X_i - X_j).
// Throws RegularityError when the division leaves a remainder.
template <class C>
HomPoly<C> divide_by_difference(const HomPoly<C> &p, int n, int deg_p, int i, int j) {
    HomPoly<C> q;
    if (p.empty())
        return q;
    if (deg_p < 1)
        throw RegularityError("nonzero constant term is not divisible");
    std::vector<Exps> order;
    for_each_composition(n, deg_p - 1, [&](const Exps &e) { order.push_back(e); });
    std::stable_sort(order.begin(), order.end(),
                     [j](const Exps &a, const Exps &b) { return a[j] < b[j]; });
    // p_a = q_{a-e_i} - q_{a-e_j}  =>  q_b = p_{b+e_i} + q_{b+e_i-e_j}.
    for (const Exps &b : order) {
        Exps up = b;
        up[i] += 1;
        C value;
        if (const C *pc = find(p, pack(up)))
            value = *pc;
        if (b[j] >= 1) {
            Exps prev = up;
            prev[j] -= 1;
            if (const C *qc = find(q, pack(prev)))
                value += *qc;
        }
        if (!value.is_zero())
            q.emplace(pack(b), std::move(value));
    }
    // The recurrence enforces the identity wherever a_i >= 1; check a_i == 0.
    for_each_composition(n, deg_p, [&](const Exps &a) {
        if (a[i] != 0)
            return;
        C residual;
        if (const C *pc = find(p, pack(a)))
            residual = *pc;
        if (a[j] >= 1) {
            Exps prev = a;
            prev[j] -= 1;
            if (const C *qc = find(q, pack(prev)))
                residual += *qc;
        }
        if (!residual.is_zero())
            throw RegularityError("numerator not divisible by X" + std::to_string(i + 1) +
                                  " - X" + std::to_string(j + 1) + " in degree " +
                                  std::to_string(deg_p));
    });
    return q;
}

// Univariate power series in X, stored sparsely, with known exponents up to `max`.
template <class C>
struct XSeries {
    std::map<int, C> terms;
    int max = 0;
};

} // namespace kdvtau::multi
