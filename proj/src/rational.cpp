#include "kdvtau/rational.hpp"

#include <stdexcept>

namespace kdvtau {

Rational::Rational(const Integer &num, const Integer &den) : q_(num, den) {
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero())
        throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    auto digits = [](std::string_view s, bool allow_sign) {
        if (s.empty())
            return false;
        std::size_t i = 0;
        if (allow_sign && s[0] == '-')
            i = 1;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                             : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw std::invalid_argument("malformed rational: " + std::string(text));
    return Rational(Integer(std::string(num)), Integer(std::string(den)));
}

std::string Rational::to_string() const {
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational pow(const Rational &base, unsigned exponent) {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
    return Rational(n, d);
}

} // namespace kdvtau
