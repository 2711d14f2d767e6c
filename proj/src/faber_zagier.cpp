#include "kdvtau/faber_zagier.hpp"

#include "kdvtau/factorial.hpp"

#include <stdexcept>

namespace kdvtau {

Rational faber_zagier_coefficient(int k) {
    if (k < 0)
        throw std::invalid_argument("negative Faber-Zagier index");
    Integer p288 = 1;
    for (int i = 0; i < k; ++i)
        p288 *= 288;
    Rational c(factorial(6L * k), p288 * factorial(3L * k) * factorial(2L * k));
    return k % 2 ? -c : c;
}

FaberZagier fz_series(int K) {
    if (K < 0)
        throw std::invalid_argument("negative truncation");
    FaberZagier fz{RationalSeries("z", -3 * K), RationalSeries("z", -3 * K)};
    for (int k = 0; k <= K; ++k) {
        Rational ck = faber_zagier_coefficient(k);
        fz.c.set(-3 * k, ck);
        fz.q.set(-3 * k, ck * Rational(1 + 6 * k, 1 - 6 * k));
    }
    return fz;
}

namespace {

Integer power(long base, int e) {
    Integer r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

} // namespace

RationalMatrix m_matrix(int max_x) {
    if (max_x < 0)
        throw std::invalid_argument("negative truncation");
    const int floor = -2 * max_x;
    RationalMatrix m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = RationalSeries("z", floor);
    for (int g = 1; -6 * g + 4 >= floor; ++g) {
        Rational a(double_factorial(6L * g - 5), power(24, g - 1) * factorial(g - 1));
        m(0, 0).set(-6 * g + 4, a * Rational(-1, 2));
        m(1, 1).set(-6 * g + 4, a * Rational(1, 2));
    }
    for (int g = 0; -6 * g + 2 >= floor; ++g) {
        Rational b(double_factorial(6L * g - 1), power(24, g) * factorial(g));
        if (-6 * g >= floor)
            m(0, 1).set(-6 * g, -b);
        m(1, 0).set(-6 * g + 2, b * Rational(6 * g + 1, 6 * g - 1));
    }
    return m;
}

RationalMatrix m_from_fz(int max_x) {
    const int floor = -2 * max_x;
    const int K = (2 * max_x + 2 + 2) / 3;
    FaberZagier fz = fz_series(K);
    const RationalSeries cb = fz.c.negated_variable(), qb = fz.q.negated_variable();
    RationalSeries w = (fz.c * qb - cb * fz.q).shifted(1) * Rational(1, 2);
    RationalMatrix m;
    m(0, 0) = w.truncated(floor);
    m(0, 1) = (-(fz.c * cb)).truncated(floor);
    m(1, 0) = (-(fz.q * qb).shifted(2)).truncated(floor);
    m(1, 1) = (-w).truncated(floor);
    return m;
}

RationalSeries one_point_series(int G) {
    if (G < 0)
        throw std::invalid_argument("negative genus");
    const int floor = -(6 * G - 2);
    // A = c, B = z q, known through z^{-3K}; the products below lose at most
    // three orders to the z-derivative and the 1/(4z) prefactor.
    const int K = (-floor + 6) / 3 + 1;
    FaberZagier fz = fz_series(K);
    const RationalSeries &A = fz.c;
    RationalSeries B = fz.q.shifted(1);
    RationalSeries Az = A.derivative(), Bz = B.derivative();
    RationalSeries sum = Bz * A.negated_variable() + B * Az.negated_variable() -
                         A * Bz.negated_variable() - Az * B.negated_variable();
    RationalSeries f = (sum * Rational(1, 4)).shifted(-1).truncated(floor);
    if (!f.known(floor))
        throw TruncationError("one-point series too shallow");
    return f;
}

Rational one_point(int g) {
    if (g < 1)
        throw std::invalid_argument("one-point genus must be positive");
    RationalSeries f = one_point_series(g);
    return f.coefficient(-(6 * g - 2)) / Rational(double_factorial(6L * g - 3));
}

} // namespace kdvtau
