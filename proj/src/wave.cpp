#include "kdvtau/wave.hpp"

#include "kdvtau/faber_zagier.hpp"
#include "kdvtau/kdv.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace kdvtau {

namespace {

void add_term(std::map<int, DiffPoly> &m, int e, const DiffPoly &c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = m.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            m.erase(it);
    }
}

void add_term(std::map<int, Rational> &m, int e, const Rational &c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = m.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            m.erase(it);
    }
}

// d_{t_k} psi and d_{t_k} psi_x as wave expressions.
struct FlowOfBasis {
    WaveExpr psi;
    WaveExpr psi_x;
};

FlowOfBasis flow_of_basis(int k) {
    static std::mutex mu;
    static std::map<int, FlowOfBasis> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(k); it != cache.end())
        return it->second;
    FlowOfBasis f;
    const Rational norm(Integer(1), double_factorial(2L * k + 1));
    const DiffPoly u = DiffPoly::jet(0);
    for (int i = 0; i <= k; ++i) {
        const Rational w = norm * Rational(double_factorial(2L * i - 1));
        const int e = 2 * k - 2 * i;
        const DiffPoly &om = omega(i - 1);
        DiffPoly om_x = d_x(om), om_xx = d_x(om, 2);
        add_term(f.psi.psi_x, e, om * w);
        add_term(f.psi.psi, e, om_x * (w * Rational(-1, 2)));
        add_term(f.psi_x.psi_x, e, om_x * (w * Rational(1, 2)));
        add_term(f.psi_x.psi, e + 2, om * w);
        add_term(f.psi_x.psi, e, (u * om * Rational(-2) - om_xx * Rational(1, 2)) * w);
    }
    cache.emplace(k, f);
    return f;
}

std::string poly_to_string(const std::map<int, Rational> &p) {
    if (p.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        os << (first ? "" : " + ") << "(" << it->second << ")";
        if (it->first != 0)
            os << "*z^" << it->first;
        first = false;
    }
    return os.str();
}

} // namespace

WaveExpr WaveExpr::wave() {
    WaveExpr w;
    w.psi.emplace(0, DiffPoly(1));
    return w;
}

WaveExpr WaveExpr::wave_x() {
    WaveExpr w;
    w.psi_x.emplace(0, DiffPoly(1));
    return w;
}

WaveExpr t_derivative(const WaveExpr &w, int k) {
    if (k < 0)
        throw std::invalid_argument("negative time index");
    FlowOfBasis basis = flow_of_basis(k);
    WaveExpr r;
    auto spread = [&](const std::map<int, DiffPoly> &terms, const WaveExpr &dbasis,
                      std::map<int, DiffPoly> &self) {
        for (const auto &[e, a] : terms) {
            add_term(self, e, flow_derivative(a, k));
            for (const auto &[eb, b] : dbasis.psi)
                add_term(r.psi, e + eb, a * b);
            for (const auto &[eb, b] : dbasis.psi_x)
                add_term(r.psi_x, e + eb, a * b);
        }
    };
    spread(w.psi, basis.psi, r.psi);
    spread(w.psi_x, basis.psi_x, r.psi_x);
    return r;
}

RationalSeries CQForm::expand(int floor) const {
    int top = 0;
    for (const auto &[e, c] : this->c)
        top = std::max(top, e);
    for (const auto &[e, c] : q)
        top = std::max(top, e);
    const int K = (top - floor) / 3 + 1;
    FaberZagier fz = fz_series(K);
    RationalSeries r("z");
    for (const auto &[e, k] : this->c)
        r += fz.c.shifted(e) * k;
    for (const auto &[e, k] : q)
        r += fz.q.shifted(e) * k;
    RationalSeries out = r.truncated(floor);
    if (!out.known(floor))
        throw TruncationError("wave expansion too shallow");
    return out;
}

std::string CQForm::to_string() const {
    return "[" + poly_to_string(c) + "]*c + [" + poly_to_string(q) + "]*q";
}

CQForm &CQForm::operator+=(const CQForm &o) {
    for (const auto &[e, k] : o.c)
        add_term(c, e, k);
    for (const auto &[e, k] : o.q)
        add_term(q, e, k);
    return *this;
}

CQForm operator*(const CQForm &a, const Rational &k) {
    CQForm r;
    if (k.is_zero())
        return r;
    for (const auto &[e, v] : a.c)
        r.c.emplace(e, v * k);
    for (const auto &[e, v] : a.q)
        r.q.emplace(e, v * k);
    return r;
}

CQForm evaluate_wk(const WaveExpr &w) {
    CQForm r;
    for (const auto &[e, a] : w.psi)
        add_term(r.c, e, evaluate_at_jets(a, wk_jets()));
    for (const auto &[e, b] : w.psi_x)
        add_term(r.q, e + 1, evaluate_at_jets(b, wk_jets()));
    return r;
}

WaveColumn wave_time_derivative(const std::vector<int> &times) {
    WaveExpr a = WaveExpr::wave(), b = WaveExpr::wave_x();
    for (int k : times) {
        a = t_derivative(a, k);
        b = t_derivative(b, k);
    }
    return {evaluate_wk(a), evaluate_wk(b)};
}

WaveColumn multi_flow_wave_derivative(const Partition &mu) {
    std::vector<int> times;
    for (int p : mu.parts())
        times.push_back(p + 1);
    return wave_time_derivative(times);
}

namespace {

// z-polynomial coefficients of exp(sum_k h_k(-s) z^{2k+3}/(2k+3)!!), s-weight <= W.
std::map<int, SparsePoly> exponential_prefactor(int W) {
    auto h = h_polynomials(W, W);
    std::map<int, SparsePoly> T;
    for (int k = 1; k <= W; ++k) {
        Rational scale(Integer(1), double_factorial(2L * k + 3));
        T.emplace(2 * k + 3, negate_variables(h[k]) * scale);
    }
    std::map<int, SparsePoly> E{{0, SparsePoly(Rational(1), W)}};
    std::map<int, SparsePoly> power{{0, SparsePoly(Rational(1), W)}};
    for (int j = 1; j <= W; ++j) {
        std::map<int, SparsePoly> next;
        for (const auto &[ea, pa] : power)
            for (const auto &[eb, pb] : T) {
                SparsePoly prod = pa * pb;
                if (prod.is_zero())
                    continue;
                auto [it, inserted] = next.try_emplace(ea + eb, prod);
                if (!inserted)
                    it->second += prod;
            }
        power = std::move(next);
        Rational inv(Integer(1), factorial(j));
        for (const auto &[e, p] : power) {
            auto [it, inserted] = E.try_emplace(e, p * inv);
            if (!inserted)
                it->second += p * inv;
        }
    }
    return E;
}

// (-1)^{l(nu)}/m(nu)! sum_mu L_{nu mu} (-1)^{l(mu)}/m(mu)! d_{t_{mu+1}} (psi, psi_x).
WaveColumn flow_combination(const Partition &nu) {
    WaveColumn r;
    if (nu.length() == 0) {
        r = multi_flow_wave_derivative(nu);
        return r;
    }
    for (const Partition &mu : partitions_of(nu.weight())) {
        Integer L = L_entry(nu, mu);
        if (L == 0)
            continue;
        Rational w = Rational(L, nu.multiplicity_factorial() * mu.multiplicity_factorial());
        if ((nu.length() + mu.length()) % 2)
            w = -w;
        WaveColumn d = multi_flow_wave_derivative(mu);
        r.psi += d.psi * w;
        r.psi_x += d.psi_x * w;
    }
    return r;
}

// Every sub-multiset of lambda.
std::vector<Partition> sub_partitions(const Partition &lambda) {
    std::vector<std::pair<int, int>> mult;
    for (int p : lambda.parts())
        if (mult.empty() || mult.back().first != p)
            mult.emplace_back(p, 1);
        else
            ++mult.back().second;
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == mult.size()) {
            out.emplace_back(cur);
            return;
        }
        for (int take = 0; take <= mult[i].second; ++take) {
            for (int t = 0; t < take; ++t)
                cur.push_back(mult[i].first);
            rec(i + 1);
            for (int t = 0; t < take; ++t)
                cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Partition difference(const Partition &lambda, const Partition &nu) {
    std::vector<int> rest = lambda.parts();
    for (int p : nu.parts())
        rest.erase(std::find(rest.begin(), rest.end(), p));
    return Partition(rest);
}

} // namespace

DeformedWavePair deformed_wave(const Partition &lambda) {
    const int W = lambda.weight();
    auto E = exponential_prefactor(W);
    DeformedWavePair pair{lambda, {}, {}};
    for (const Partition &nu : sub_partitions(lambda)) {
        SMonomial rho = difference(lambda, nu).s_exponents();
        std::map<int, Rational> e_rho;
        for (const auto &[e, p] : E) {
            Rational k = p.coefficient(rho);
            if (!k.is_zero())
                e_rho.emplace(e, k);
        }
        if (e_rho.empty())
            continue;
        WaveColumn w = flow_combination(nu);
        auto multiply = [&](const CQForm &f) {
            CQForm r;
            for (const auto &[ep, kp] : e_rho) {
                for (const auto &[e, k] : f.c)
                    add_term(r.c, e + ep, k * kp);
                for (const auto &[e, k] : f.q)
                    add_term(r.q, e + ep, k * kp);
            }
            return r;
        };
        pair.A += multiply(w.psi);
        pair.B += multiply(w.psi_x);
    }
    return pair;
}

std::vector<DeformedWavePair> deformed_waves(int weight) {
    std::vector<DeformedWavePair> out;
    for (int w = 0; w <= weight; ++w)
        for (const Partition &lambda : partitions_of(w))
            out.push_back(deformed_wave(lambda));
    return out;
}

KSOperator<Rational> wk_ks_operator() { return {{Rational(0), Rational(1)}}; }

KSOperator<SparsePoly> wp_ks_operator(int K, int weight_cap) {
    auto h = h_polynomials(K, weight_cap);
    KSOperator<SparsePoly> op;
    op.shifts.push_back(SparsePoly(Rational(0), weight_cap));
    for (int k = 1; k <= K + 1; ++k)
        op.shifts.push_back(negate_variables(h[k - 1]));
    return op;
}

} // namespace kdvtau
