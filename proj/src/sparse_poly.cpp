#include "kdvtau/sparse_poly.hpp"

#include <algorithm>
#include <sstream>

namespace kdvtau {

namespace {

void trim(SMonomial &m) {
    while (!m.empty() && m.back() == 0)
        m.pop_back();
}

} // namespace

int s_weight(const SMonomial &m) {
    int w = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
        w += m[j] * static_cast<int>(j + 1);
    return w;
}

SparsePoly::SparsePoly(const Rational &constant, int weight_cap) : cap_(weight_cap) {
    if (!constant.is_zero())
        terms_.emplace(SMonomial{}, constant);
}

SparsePoly SparsePoly::monomial(SMonomial exponents, const Rational &coeff, int weight_cap) {
    trim(exponents);
    SparsePoly p;
    p.cap_ = weight_cap;
    p.add_term(exponents, coeff);
    return p;
}

SparsePoly SparsePoly::variable(int j, int weight_cap) {
    SMonomial m(j, 0);
    m[j - 1] = 1;
    return monomial(std::move(m), Rational(1), weight_cap);
}

Rational SparsePoly::coefficient(const SMonomial &m) const {
    SMonomial key = m;
    trim(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const SMonomial &m, const Rational &c) {
    if (c.is_zero() || s_weight(m) > cap_)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

SparsePoly SparsePoly::capped(int cap) const {
    SparsePoly r;
    r.cap_ = std::min(cap, cap_);
    for (const auto &[m, c] : terms_)
        r.add_term(m, c);
    return r;
}

SparsePoly &SparsePoly::operator+=(const SparsePoly &o) {
    if (o.cap_ < cap_)
        *this = capped(o.cap_);
    for (const auto &[m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

SparsePoly &SparsePoly::operator-=(const SparsePoly &o) {
    if (o.cap_ < cap_)
        *this = capped(o.cap_);
    for (const auto &[m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

SparsePoly operator-(const SparsePoly &a) {
    SparsePoly r;
    r.cap_ = a.cap_;
    for (const auto &[m, c] : a.terms_)
        r.terms_.emplace(m, -c);
    return r;
}

SparsePoly operator*(const SparsePoly &a, const SparsePoly &b) {
    SparsePoly r;
    r.cap_ = std::min(a.cap_, b.cap_);
    for (const auto &[ma, ca] : a.terms_) {
        int wa = s_weight(ma);
        for (const auto &[mb, cb] : b.terms_) {
            if (r.cap_ != INT_MAX && wa + s_weight(mb) > r.cap_)
                continue;
            SMonomial m(std::max(ma.size(), mb.size()), 0);
            for (std::size_t i = 0; i < ma.size(); ++i)
                m[i] += ma[i];
            for (std::size_t i = 0; i < mb.size(); ++i)
                m[i] += mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

SparsePoly operator*(const SparsePoly &a, const Rational &k) {
    SparsePoly r;
    r.cap_ = a.cap_;
    if (k.is_zero())
        return r;
    for (const auto &[m, c] : a.terms_)
        r.terms_.emplace(m, c * k);
    return r;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        os << (first ? "" : " + ") << c;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0)
                continue;
            os << "*s" << (j + 1);
            if (m[j] > 1)
                os << "^" << m[j];
        }
        first = false;
    }
    return os.str();
}

SparsePoly negate_variables(const SparsePoly &p) {
    SparsePoly r = p * Rational(0);
    r = r.capped(p.weight_cap());
    for (const auto &[m, c] : p.terms()) {
        int degree = 0;
        for (int e : m)
            degree += e;
        r += SparsePoly::monomial(m, degree % 2 ? -c : c, p.weight_cap());
    }
    return r;
}

} // namespace kdvtau
