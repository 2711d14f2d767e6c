// Truncated Laurent series in one variable over an exact coefficient ring.
//
// Coefficients strictly below the floor are unknown (not zero).  A series
// without a floor is exact: it has finite support and every coefficient is
// known.
#pragma once

#include "kdvtau/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace kdvtau {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class C>
class LaurentSeries {
public:
    using Floor = std::optional<int>;

    explicit LaurentSeries(std::string var = "z", Floor floor = std::nullopt)
        : var_(std::move(var)), floor_(floor) {}

    static LaurentSeries monomial(const std::string &var, int exponent, C coeff) {
        LaurentSeries s(var);
        s.set(exponent, std::move(coeff));
        return s;
    }

    const std::string &variable() const { return var_; }
    Floor floor() const { return floor_; }
    bool exact() const { return !floor_.has_value(); }
    const std::map<int, C> &terms() const { return terms_; }

    // Lowest retained exponent: the floor, or the lowest stored term when exact.
    std::optional<int> low() const {
        if (floor_)
            return floor_;
        if (terms_.empty())
            return std::nullopt;
        return terms_.begin()->first;
    }

    // Highest exponent carrying a nonzero coefficient.
    std::optional<int> high() const {
        if (terms_.empty())
            return std::nullopt;
        return terms_.rbegin()->first;
    }

    bool known(int e) const { return !floor_ || e >= *floor_; }

    C coefficient(int e) const {
        if (!known(e))
            throw TruncationError("coefficient of " + var_ + "^" + std::to_string(e) +
                                  " is below truncation floor " + std::to_string(*floor_));
        auto it = terms_.find(e);
        return it == terms_.end() ? C() : it->second;
    }

    void set(int e, C c) {
        if (!known(e))
            throw TruncationError("cannot store below truncation floor");
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[e] = std::move(c);
    }

    void add_to(int e, const C &c) {
        if (!known(e))
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        } else if (c.is_zero()) {
            terms_.erase(it);
        }
    }

    // Raises the floor; never lowers it.
    LaurentSeries truncated(int new_floor) const {
        LaurentSeries r(var_, floor_ ? std::max(*floor_, new_floor) : new_floor);
        for (auto it = terms_.lower_bound(*r.floor_); it != terms_.end(); ++it)
            r.terms_.insert(*it);
        return r;
    }

    // All known coefficients vanish.
    bool is_zero() const { return terms_.empty(); }

    LaurentSeries &operator+=(const LaurentSeries &o) { return accumulate(o, false); }
    LaurentSeries &operator-=(const LaurentSeries &o) { return accumulate(o, true); }

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b) { return a -= b; }
    friend LaurentSeries operator-(const LaurentSeries &a) {
        LaurentSeries r(a.var_, a.floor_);
        for (const auto &[e, c] : a.terms_)
            r.terms_.emplace(e, -c);
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries &a, const Rational &k) {
        LaurentSeries r(a.var_, a.floor_);
        if (k.is_zero())
            return r;
        for (const auto &[e, c] : a.terms_)
            r.terms_.emplace(e, c * k);
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b) {
        a.check_var(b);
        Floor f = product_floor(a, b);
        LaurentSeries r(a.var_, f);
        for (const auto &[ea, ca] : a.terms_) {
            auto start = b.terms_.begin();
            if (f)
                start = b.terms_.lower_bound(*f - ea);
            for (auto it = start; it != b.terms_.end(); ++it)
                r.add_to(ea + it->first, ca * it->second);
        }
        return r;
    }

    LaurentSeries &operator*=(const LaurentSeries &o) { return *this = *this * o; }

    // Multiplication by var^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries r(var_, floor_ ? Floor(*floor_ + k) : std::nullopt);
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e + k, c);
        return r;
    }

    // var -> -var.
    LaurentSeries negated_variable() const {
        LaurentSeries r(var_, floor_);
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e, (e % 2 == 0) ? c : -c);
        return r;
    }

    // d/d(var).
    LaurentSeries derivative() const {
        LaurentSeries r(var_, floor_ ? Floor(*floor_ - 1) : std::nullopt);
        for (const auto &[e, c] : terms_)
            if (e != 0)
                r.terms_.emplace(e - 1, c * Rational(e));
        return r;
    }

    template <class F>
    auto map_coefficients(F &&f) const -> LaurentSeries<decltype(f(std::declval<const C &>()))> {
        using D = decltype(f(std::declval<const C &>()));
        LaurentSeries<D> r(var_, floor_);
        for (const auto &[e, c] : terms_)
            r.set(e, f(c));
        return r;
    }

    // 1/a for a series whose leading coefficient is the identity.  The result
    // is computed down to `target_floor` or as deep as a's own floor allows.
    LaurentSeries reciprocal(int target_floor) const {
        if (terms_.empty())
            throw std::domain_error("reciprocal of zero series");
        int h = *high();
        if (!(terms_.rbegin()->second == C(Rational(1))))
            throw std::domain_error("reciprocal requires leading coefficient 1");
        int floor = target_floor;
        if (floor_)
            floor = std::max(floor, *floor_ - 2 * h);
        LaurentSeries r(var_, floor);
        // r = sum_j r_j var^{-h-j};  sum_{i} a_{h-i} r_{j-i} = [j == 0].
        std::map<int, C> inv;
        for (int j = 0; -h - j >= floor; ++j) {
            C acc = j == 0 ? C(Rational(1)) : C();
            for (int i = 1; i <= j; ++i) {
                auto it = terms_.find(h - i);
                if (it == terms_.end())
                    continue;
                auto jt = inv.find(j - i);
                if (jt == inv.end())
                    continue;
                acc -= it->second * jt->second;
            }
            if (!acc.is_zero())
                inv.emplace(j, acc);
        }
        for (auto &[j, c] : inv)
            r.set(-h - j, std::move(c));
        return r;
    }

    // Same variable, floor and coefficients.
    friend bool operator==(const LaurentSeries &a, const LaurentSeries &b) {
        return a.var_ == b.var_ && a.floor_ == b.floor_ && a.terms_ == b.terms_;
    }

    // Equality on every exponent both operands know.
    friend bool agree(const LaurentSeries &a, const LaurentSeries &b) {
        a.check_var(b);
        Floor f;
        if (a.floor_ && b.floor_)
            f = std::max(*a.floor_, *b.floor_);
        else
            f = a.floor_ ? a.floor_ : b.floor_;
        auto restrict = [&](const LaurentSeries &s) {
            std::map<int, C> m;
            for (const auto &[e, c] : s.terms_)
                if (!f || e >= *f)
                    m.emplace(e, c);
            return m;
        };
        return restrict(a) == restrict(b);
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            os << (first ? "" : " + ") << "(" << it->second << ")";
            if (it->first != 0)
                os << "*" << var_ << "^" << it->first;
            first = false;
        }
        if (first)
            os << "0";
        if (floor_)
            os << " + O(" << var_ << "^" << (*floor_ - 1) << ")";
        return os.str();
    }

private:
    std::string var_;
    std::map<int, C> terms_;
    Floor floor_;

    void check_var(const LaurentSeries &o) const {
        if (var_ != o.var_)
            throw std::invalid_argument("series variable mismatch: " + var_ + " vs " + o.var_);
    }

    LaurentSeries &accumulate(const LaurentSeries &o, bool subtract) {
        check_var(o);
        if (o.floor_ && (!floor_ || *o.floor_ > *floor_)) {
            floor_ = o.floor_;
            terms_.erase(terms_.begin(), terms_.lower_bound(*floor_));
        }
        for (const auto &[e, c] : o.terms_)
            add_to(e, subtract ? -c : c);
        return *this;
    }

    // Highest exponent that may be nonzero, counting the unknown region.
    static std::optional<int> effective_high(const LaurentSeries &s) {
        std::optional<int> h = s.high();
        if (s.floor_)
            h = h ? std::max(*h, *s.floor_ - 1) : *s.floor_ - 1;
        return h;
    }

    static Floor product_floor(const LaurentSeries &a, const LaurentSeries &b) {
        Floor f;
        auto consider = [&f](const Floor &lo, const std::optional<int> &hi) {
            if (!lo || !hi)
                return;
            int v = *lo + *hi;
            f = f ? std::max(*f, v) : v;
        };
        consider(a.floor_, effective_high(b));
        consider(b.floor_, effective_high(a));
        return f;
    }
};

// Residue at infinity: minus the coefficient of var^{-1}.
template <class C>
C residue_at_infinity(const LaurentSeries<C> &a) {
    if (!a.known(-1))
        throw TruncationError("residue requested above truncation floor");
    return -a.coefficient(-1);
}

template <class C>
LaurentSeries<C> series_mul(const LaurentSeries<C> &a, const LaurentSeries<C> &b) {
    return a * b;
}

template <class C>
LaurentSeries<C> substitute_negate(const LaurentSeries<C> &a) {
    return a.negated_variable();
}

using RationalSeries = LaurentSeries<Rational>;

} // namespace kdvtau
