#include "kdvtau/diffpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace kdvtau {

namespace {

void trim(JetMonomial &m) {
    while (!m.empty() && m.back() == 0)
        m.pop_back();
}

JetMonomial multiply(const JetMonomial &a, const JetMonomial &b) {
    JetMonomial r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    return r;
}

} // namespace

DiffPoly::DiffPoly(const Rational &constant) {
    if (!constant.is_zero())
        terms_.emplace(JetMonomial{}, constant);
}

DiffPoly DiffPoly::jet(int k) {
    JetMonomial m(k + 1, 0);
    m[k] = 1;
    return monomial(std::move(m), Rational(1));
}

DiffPoly DiffPoly::monomial(JetMonomial exponents, const Rational &coeff) {
    trim(exponents);
    DiffPoly p;
    p.add_term(exponents, coeff);
    return p;
}

void DiffPoly::add_term(const JetMonomial &m, const Rational &c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

int DiffPoly::max_jet() const {
    int r = -1;
    for (const auto &[m, c] : terms_)
        r = std::max(r, static_cast<int>(m.size()) - 1);
    return r;
}

Rational DiffPoly::coefficient(const JetMonomial &m) const {
    JetMonomial key = m;
    trim(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
}

int monomial_degree(const JetMonomial &m) {
    int d = 0;
    for (std::size_t k = 0; k < m.size(); ++k)
        d += m[k] * static_cast<int>(k + 2);
    return d;
}

int DiffPoly::homogeneous_degree() const {
    int d = -1;
    for (const auto &[m, c] : terms_) {
        int e = monomial_degree(m);
        if (d >= 0 && e != d)
            return -1;
        d = e;
    }
    return d < 0 ? 0 : d;
}

DiffPoly &DiffPoly::operator+=(const DiffPoly &o) {
    for (const auto &[m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

DiffPoly &DiffPoly::operator-=(const DiffPoly &o) {
    for (const auto &[m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

DiffPoly operator-(const DiffPoly &a) {
    DiffPoly r;
    for (const auto &[m, c] : a.terms_)
        r.terms_.emplace(m, -c);
    return r;
}

DiffPoly operator*(const DiffPoly &a, const DiffPoly &b) {
    DiffPoly r;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_)
            r.add_term(multiply(ma, mb), ca * cb);
    return r;
}

DiffPoly operator*(const DiffPoly &a, const Rational &k) {
    DiffPoly r;
    if (k.is_zero())
        return r;
    for (const auto &[m, c] : a.terms_)
        r.terms_.emplace(m, c * k);
    return r;
}

std::string jet_name(int k) {
    switch (k) {
    case 0: return "u";
    case 1: return "u_x";
    case 2: return "u_xx";
    default: return "u_" + std::to_string(k);
    }
}

std::string DiffPoly::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        const auto &[m, c] = *it;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        bool constant = m.empty();
        if (constant || !(mag.numerator() == 1))
            os << mag.numerator().get_str() << (constant ? "" : "*");
        bool lead = true;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0)
                continue;
            os << (lead ? "" : "*") << jet_name(static_cast<int>(k));
            if (m[k] > 1)
                os << "^" << m[k];
            lead = false;
        }
        if (!(mag.denominator() == 1))
            os << "/" << mag.denominator().get_str();
    }
    return os.str();
}

DiffPoly d_x(const DiffPoly &f) {
    DiffPoly r;
    for (const auto &[m, c] : f.terms()) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0)
                continue;
            JetMonomial n = m;
            n[k] -= 1;
            if (n.size() <= k + 1)
                n.resize(k + 2, 0);
            n[k + 1] += 1;
            r += DiffPoly::monomial(std::move(n), c * Rational(m[k]));
        }
    }
    return r;
}

DiffPoly d_x(const DiffPoly &f, int times) {
    DiffPoly r = f;
    for (int i = 0; i < times; ++i)
        r = d_x(r);
    return r;
}

DiffPoly partial(const DiffPoly &f, int k) {
    DiffPoly r;
    for (const auto &[m, c] : f.terms()) {
        if (static_cast<int>(m.size()) <= k || m[k] == 0)
            continue;
        JetMonomial n = m;
        n[k] -= 1;
        r += DiffPoly::monomial(std::move(n), c * Rational(m[k]));
    }
    return r;
}

DiffPoly formal_antiderivative(const DiffPoly &f) {
    DiffPoly rest = f;
    DiffPoly result;
    while (!rest.is_zero()) {
        int top = rest.max_jet();
        if (top <= 0)
            throw NonIntegrableError("remainder free of derivatives: " + rest.to_string());
        // rest = A*u_top + B with A, B free of u_top; integrate A in u_{top-1}.
        DiffPoly trial;
        for (const auto &[m, c] : rest.terms()) {
            if (static_cast<int>(m.size()) - 1 != top)
                continue;
            if (m[top] != 1)
                throw NonIntegrableError("top jet " + jet_name(top) + " appears nonlinearly");
            JetMonomial n = m;
            n[top] = 0;
            n[top - 1] += 1;
            trial += DiffPoly::monomial(std::move(n), c / Rational(m[top - 1] + 1));
        }
        result += trial;
        rest -= d_x(trial);
        if (rest.max_jet() >= top)
            throw NonIntegrableError("failed to lower the top jet " + jet_name(top));
    }
    return result;
}

Rational evaluate_at_jets(const DiffPoly &f, const std::vector<Rational> &jets) {
    Rational total;
    for (const auto &[m, c] : f.terms()) {
        Rational v = c;
        for (std::size_t k = 0; k < m.size() && !v.is_zero(); ++k) {
            if (m[k] == 0)
                continue;
            Rational x = k < jets.size() ? jets[k] : Rational(0);
            v *= pow(x, static_cast<unsigned>(m[k]));
        }
        total += v;
    }
    return total;
}

DiffPoly dispersionless(const DiffPoly &f) {
    DiffPoly r;
    for (const auto &[m, c] : f.terms())
        if (m.size() <= 1)
            r += DiffPoly::monomial(m, c);
    return r;
}

const std::vector<Rational> &wk_jets() {
    static const std::vector<Rational> jets{Rational(0), Rational(1)};
    return jets;
}

} // namespace kdvtau
