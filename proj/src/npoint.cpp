#include "kdvtau/npoint.hpp"

#include "kdvtau/factorial.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>

namespace kdvtau {

std::optional<int> genus_of(const std::vector<int> &ks) {
    long sum = 0;
    for (int k : ks) {
        if (k < 0)
            return std::nullopt;
        sum += k;
    }
    long top = sum + 3 - static_cast<long>(ks.size());
    if (top < 0 || top % 3 != 0)
        return std::nullopt;
    return static_cast<int>(top / 3);
}

Rational CorrelatorTable::at(const std::vector<int> &ks) const {
    auto it = values.find(ks);
    return it == values.end() ? Rational(0) : it->second;
}

std::map<std::vector<int>, Rational> CorrelatorTable::sorted_entries() const {
    std::map<std::vector<int>, Rational> out;
    for (const auto &[ks, v] : values)
        if (std::is_sorted(ks.begin(), ks.end()))
            out.emplace(ks, v);
    return out;
}

namespace {

std::vector<int> wanted_degrees(int n, int k_max) {
    std::vector<int> ds;
    for (int d = n; d <= n * (k_max + 1); ++d)
        if ((d - 2 * n) % 3 == 0)
            ds.push_back(d);
    return ds;
}

Rational double_factorial_product(const std::vector<int> &ks, int shift) {
    Integer p = 1;
    for (int k : ks)
        p *= double_factorial(2L * k + shift);
    return Rational(p);
}

} // namespace

int minimum_depth(int n, int k_max) {
    auto ds = wanted_degrees(n, k_max);
    if (ds.empty())
        return 0;
    return std::max(0, trace_matrix_depth(n, ds.back()));
}

XMatrix<Rational> wk_matrix_x(int depth, bool checked) {
    return matrix_to_x(m_matrix(depth), depth, checked);
}

CorrelatorTable n_point_table(int n, int k_max, const TableOptions &opt) {
    if (n < 2)
        throw std::invalid_argument("n_point_table needs n >= 2");
    if (k_max < 0)
        throw std::invalid_argument("k_max must be nonnegative");
    const int min_depth = minimum_depth(n, k_max);
    int depth = opt.depth == 0 ? min_depth : opt.depth;
    if (depth < min_depth && !opt.unchecked)
        throw std::invalid_argument("depth " + std::to_string(depth) + " below the minimum " +
                                    std::to_string(min_depth));
    CorrelatorTable table;
    table.n = n;
    table.k_max = k_max;
    table.depth = depth;
    auto degrees = wanted_degrees(n, k_max);
    auto M = wk_matrix_x(depth);
    TraceOptions topt;
    topt.workers = opt.workers;
    topt.unchecked = opt.unchecked;
    auto F = trace_formula(M, n, degrees, topt);
    for (const auto &[d, comp] : F) {
        for (const auto &[key, c] : comp) {
            multi::Exps e = multi::unpack(key);
            std::vector<int> ks(n);
            bool keep = true;
            for (int i = 0; i < n; ++i) {
                ks[i] = e[i] - 1;
                if (ks[i] < 0 || ks[i] > k_max)
                    keep = false;
            }
            if (keep)
                table.values.emplace(ks, c / double_factorial_product(ks, 1));
        }
    }
    return table;
}

VerifyReport verify_table(const CorrelatorTable &table, int workers) {
    TableOptions opt;
    opt.workers = workers;
    opt.depth = 2 * std::max(table.depth, 1);
    opt.unchecked = true;
    CorrelatorTable deep = n_point_table(table.n, table.k_max, opt);
    VerifyReport r;
    r.depth = table.depth;
    r.doubled_depth = opt.depth;
    for (const auto &[ks, v] : deep.values)
        if (table.at(ks) != v)
            ++r.mismatches;
    for (const auto &[ks, v] : table.values)
        if (!deep.values.count(ks))
            ++r.mismatches;
    return r;
}

Rational region_coefficient(const std::vector<int> &ks) {
    const int n = static_cast<int>(ks.size());
    if (n < 2)
        throw std::invalid_argument("region expansion needs n >= 2");
    std::vector<int> beta(n);
    for (int i = 0; i < n; ++i) {
        if (ks[i] < 0)
            return Rational(0);
        beta[i] = ks[i] + 1;
    }
    struct Necklace {
        std::vector<int> v;
        std::vector<int> lo, hi, bound;
        int sign = 1;
    };
    std::vector<Necklace> plans;
    int alpha_max = 0;
    for (const auto &v : detail::necklaces(n)) {
        Necklace p;
        p.v = v;
        p.lo.resize(n);
        p.hi.resize(n);
        for (int j = 0; j < n; ++j) {
            int a = v[j], b = v[(j + 1) % n];
            p.lo[j] = std::min(a, b);
            p.hi[j] = std::max(a, b);
            if (a != p.lo[j])
                p.sign = -p.sign;
        }
        // The other factor at variable x, given one factor j touching it.
        std::vector<int> pos(n);
        for (int j = 0; j < n; ++j)
            pos[v[j]] = j;
        auto other = [&](int j, int x) {
            int pj = pos[x];
            int prev = (pj + n - 1) % n;
            return j == pj ? prev : pj;
        };
        p.bound.assign(n, INT_MIN);
        std::function<int(int)> bound = [&](int j) -> int {
            if (p.bound[j] != INT_MIN)
                return p.bound[j];
            int s = p.lo[j];
            int o = other(j, s);
            int b = p.lo[o] == s ? beta[s] - 1 : beta[s] + bound(o);
            return p.bound[j] = b;
        };
        bool empty = false;
        for (int j = 0; j < n; ++j)
            if (bound(j) < 0)
                empty = true;
        if (empty)
            continue;
        for (int x = 0; x < n; ++x) {
            int pj = pos[x], prev = (pj + n - 1) % n;
            int a = beta[x];
            if (p.hi[pj] == x)
                a += p.bound[pj];
            if (p.hi[prev] == x)
                a += p.bound[prev];
            alpha_max = std::max(alpha_max, a);
        }
        plans.push_back(std::move(p));
    }
    auto M = wk_matrix_x(alpha_max);
    auto coeff_at = [&](int alpha) {
        Mat2<Rational> m;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                auto it = M(a, b).terms.find(alpha);
                m(a, b) = it == M(a, b).terms.end() ? Rational(0) : it->second;
            }
        return m;
    };
    std::map<int, Mat2<Rational>> cache;
    auto matrix_at = [&](int alpha) -> const Mat2<Rational> * {
        if (alpha < -1)
            return nullptr;
        auto it = cache.find(alpha);
        if (it == cache.end())
            it = cache.emplace(alpha, coeff_at(alpha)).first;
        return &it->second;
    };

    Rational total;
    for (const auto &p : plans) {
        const auto &v = p.v;
        auto contrib = [&](int j, int x, int m) { return p.lo[j] == x ? m + 1 : -m; };
        Rational necklace_sum;
        for (int last = 0; last <= p.bound[n - 1]; ++last) {
            // state: m_{j} -> product M(X_{v_0}) ... M(X_{v_j}).
            std::map<int, Mat2<Rational>> state;
            for (int m0 = 0; m0 <= p.bound[0]; ++m0) {
                int alpha = beta[v[0]] - contrib(n - 1, v[0], last) - contrib(0, v[0], m0);
                if (const auto *mat = matrix_at(alpha))
                    state.emplace(m0, *mat);
            }
            for (int j = 1; j < n - 1; ++j) {
                std::map<int, Mat2<Rational>> next;
                for (const auto &[mp, acc] : state)
                    for (int mj = 0; mj <= p.bound[j]; ++mj) {
                        int alpha = beta[v[j]] - contrib(j - 1, v[j], mp) - contrib(j, v[j], mj);
                        const auto *mat = matrix_at(alpha);
                        if (!mat)
                            continue;
                        auto prod = acc * *mat;
                        auto [it, inserted] = next.try_emplace(mj, prod);
                        if (!inserted)
                            it->second = it->second + prod;
                    }
                state = std::move(next);
            }
            for (const auto &[mp, acc] : state) {
                int x = v[n - 1];
                int alpha = beta[x] - contrib(n - 2, x, mp) - contrib(n - 1, x, last);
                if (const auto *mat = matrix_at(alpha))
                    necklace_sum += (acc * *mat).trace();
            }
        }
        total += p.sign > 0 ? necklace_sum : -necklace_sum;
    }
    Rational result = -total;
    if (n == 2) {
        // -(z1^2 + z2^2)/(z1^2 - z2^2)^2 = -sum_p (p+1)(X1^{p+2} X2^{-p-1} + X1^{p+1} X2^{-p}).
        int b1 = beta[0], b2 = beta[1];
        if (b2 <= -1 && b1 == -b2 + 1)
            result -= Rational(b1 - 1);
        if (b2 <= 0 && b1 == -b2 + 1)
            result -= Rational(b1);
    }
    return result;
}

Rational correlator(const std::vector<int> &ks_in) {
    auto g = genus_of(ks_in);
    if (!g)
        return Rational(0);
    std::vector<int> ks = ks_in;
    std::sort(ks.begin(), ks.end());
    const int n = static_cast<int>(ks.size());
    if (n == 0)
        throw std::invalid_argument("correlator needs at least one insertion");
    if (n == 1)
        return *g >= 1 ? one_point(*g) : Rational(0);
    if (n > multi::kMaxVars)
        throw std::invalid_argument("too many insertions");
    Rational raw;
    if (n <= 4) {
        int d = 0;
        for (int k : ks)
            d += k + 1;
        auto M = wk_matrix_x(std::max(0, trace_matrix_depth(n, d)));
        auto F = trace_formula(M, n, {d});
        multi::Exps e{};
        for (int i = 0; i < n; ++i)
            e[i] = ks[i] + 1;
        if (const Rational *c = multi::find(F[d], multi::pack(e)))
            raw = *c;
    } else {
        raw = region_coefficient(ks);
    }
    return raw / double_factorial_product(ks, 1);
}

std::map<std::vector<int>, Rational> normalization_convert(const CorrelatorTable &table,
                                                           Normalization mode) {
    std::map<std::vector<int>, Rational> out;
    for (const auto &[ks, v] : table.values) {
        switch (mode) {
        case Normalization::plain:
            out.emplace(ks, v);
            break;
        case Normalization::witten:
            out.emplace(ks, v * double_factorial_product(ks, 1));
            break;
        case Normalization::kontsevich:
            out.emplace(ks, v * double_factorial_product(ks, -1));
            break;
        }
    }
    return out;
}

} // namespace kdvtau
