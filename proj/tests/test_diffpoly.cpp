#include <doctest.h>

#include "kdvtau/factorial.hpp"
#include "kdvtau/kdv.hpp"

using namespace kdvtau;

namespace {

DiffPoly u(int k) { return DiffPoly::jet(k); }

DiffPoly mono(JetMonomial e, Rational c) { return DiffPoly::monomial(std::move(e), c); }

DiffPoly u_power(int m) { return mono({m}, Rational(1)); }

bool vanishes_through(const DiffSeries &s, int floor) {
    return s.known(floor) && s.truncated(floor).is_zero();
}

} // namespace

TEST_CASE("total x-derivative") {
    CHECK(d_x(u(0)) == u(1));
    CHECK(d_x(u(0) * u(0) * Rational(1, 2)) == u(0) * u(1));
    CHECK(d_x(u(0) * u(2)) == u(1) * u(2) + u(0) * u(3));
    CHECK(d_x(DiffPoly(7)).is_zero());
}

TEST_CASE("formal antiderivative") {
    CHECK(formal_antiderivative(u(0) * u(1)) == u(0) * u(0) * Rational(1, 2));
    CHECK(formal_antiderivative(u(3) * Rational(1, 12)) == u(2) * Rational(1, 12));
    CHECK_THROWS_AS(formal_antiderivative(u(0) * u(0)), NonIntegrableError);
    CHECK_THROWS_AS(formal_antiderivative(u(1) * u(1)), NonIntegrableError);

    const DiffPoly omega2 = omega(2);
    const DiffPoly rhs = u(0) * u(0) * u(1) * Rational(1, 2) + u(0) * u(3) * Rational(1, 12) +
                         u(1) * u(2) * Rational(1, 6) + u(5) * Rational(1, 240);
    CHECK(formal_antiderivative(rhs) == omega2);
    const DiffPoly misprint = u(0) * u(0) * u(1) * Rational(1, 2) + u(0) * u(3) * Rational(1, 12) +
                              u(1) * u(2) * Rational(1, 8) + u(5) * Rational(1, 240);
    CHECK(formal_antiderivative(misprint) != omega2);
}

TEST_CASE("antiderivative inverts d_x on random graded polynomials") {
    DiffPoly f = u(0) * u(0) * u(3) * Rational(2, 3) + u(1) * u(4) * Rational(-5) +
                 u(2) * u(2) * u(0) + u(6) * Rational(1, 7);
    CHECK(formal_antiderivative(d_x(f)) == f);
}

TEST_CASE("lenard-magri recursion") {
    CHECK(omega(-1) == DiffPoly(1));
    CHECK(omega(0) == u(0));
    CHECK(omega(1) == u_power(2) * Rational(1, 2) + u(2) * Rational(1, 12));
    CHECK(omega(2) == u_power(3) * Rational(1, 6) + u(0) * u(2) * Rational(1, 12) +
                          u(1) * u(1) * Rational(1, 24) + u(4) * Rational(1, 240));
    const DiffPoly omega3 = u_power(4) * Rational(1, 24) + u_power(2) * u(2) * Rational(1, 24) +
                            u(0) * u(1) * u(1) * Rational(1, 24) + u(0) * u(4) * Rational(1, 240) +
                            u(1) * u(3) * Rational(1, 120) + u(2) * u(2) * Rational(1, 160) +
                            u(6) * Rational(1, 6720);
    CHECK(omega(3) == omega3);
    CHECK_THROWS(omega(-2));
}

TEST_CASE("lenard steps stay integrable and homogeneous") {
    for (int p = 0; p <= 14; ++p) {
        CHECK_NOTHROW(omega(p));
        CHECK(omega(p).homogeneous_degree() == 2 * p + 2);
    }
}

TEST_CASE("kdv flows") {
    CHECK(flow_derivative(u(0), 0) == u(1));
    CHECK(flow_derivative(u(0), 1) == u(0) * u(1) + u(3) * Rational(1, 12));
    CHECK(flow_derivative(u(1), 1) == u(1) * u(1) + u(0) * u(2) + u(4) * Rational(1, 12));
}

TEST_CASE("flows commute") {
    const DiffPoly f = u(0) * u(2);
    for (int a = 0; a <= 3; ++a)
        for (int b = a + 1; b <= 3; ++b)
            CHECK(flow_derivative(flow_derivative(f, a), b) ==
                  flow_derivative(flow_derivative(f, b), a));
}

TEST_CASE("resolvent") {
    const int K = 10;
    DiffSeries R = resolvent(K);
    CHECK(R.coefficient(0) == DiffPoly(1));
    CHECK(R.coefficient(-2) == u(0));
    CHECK(R.coefficient(-1).is_zero());

    DiffSeries Rx = x_derivative(R), Rxx = x_derivative(R, 2);
    DiffSeries coef("z");
    coef.set(0, u(0) * Rational(4));
    coef.set(2, DiffPoly(-2));
    DiffSeries res = R * Rxx - Rx * Rx * Rational(1, 2) + coef * R * R;
    res += DiffSeries::monomial("z", 2, DiffPoly(2));
    CHECK(vanishes_through(res, -2 * K));

    // (1 - 2u/z^2)^{-1/2} at u_j = 0 for j >= 1.
    for (int k = 0; k <= K; ++k)
        CHECK(dispersionless(R.coefficient(-2 * k)) ==
              u_power(k) * Rational(double_factorial(2 * k - 1), factorial(k)));
}

TEST_CASE("riccati series") {
    const int K = 20;
    DiffSeries chi = riccati_chi(K);
    CHECK(chi.coefficient(1) == DiffPoly(1));
    CHECK(chi.coefficient(-1) == -u(0));
    CHECK(chi.coefficient(-2) == u(1) * Rational(1, 2));

    DiffSeries res = x_derivative(chi) + chi * chi;
    res += DiffSeries::monomial("z", 0, u(0) * Rational(2));
    res -= DiffSeries::monomial("z", 2, DiffPoly(1));
    CHECK(vanishes_through(res, -K + 1));

    // chi = R_x / (2R) + z / R.
    DiffSeries R = resolvent(10);
    DiffSeries wr = chi * R - x_derivative(R) * Rational(1, 2);
    wr -= DiffSeries::monomial("z", 1, DiffPoly(1));
    CHECK(vanishes_through(wr, -20));
}

TEST_CASE("theta matrix") {
    const int K = 8;
    DiffMatrix t = theta_matrix(K);
    CHECK((t(0, 0) + t(1, 1)).is_zero());
    DiffMatrix sq = t * t;
    const int floor = -2 * K;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            DiffSeries e = sq(i, j);
            if (i == j)
                e -= DiffSeries::monomial("z", 2, DiffPoly(1));
            CHECK(vanishes_through(e, floor));
        }
}

TEST_CASE("jet evaluation") {
    CHECK(evaluate_at_jets(omega(1), wk_jets()) == 0);
    CHECK(evaluate_at_jets(omega(2), wk_jets()) == Rational(1, 24));
    CHECK(evaluate_at_jets(u(0), {Rational(5)}) == 5);
    CHECK(evaluate_at_jets(u(0) * u(3), {Rational(2)}) == 0);
}

TEST_CASE("general two-point correlators") {
    auto tp = two_point_general(6);
    CHECK(tp.at({0, 0}) == u(0));
    CHECK(tp.at({0, 1}) == u_power(2) * Rational(1, 2) + u(2) * Rational(1, 12));
    const DiffPoly expected = u_power(4) * Rational(1, 8) + u(0) * u(1) * u(1) * Rational(1, 12) +
                              u_power(2) * u(2) * Rational(1, 8) + u(0) * u(4) * Rational(1, 90) +
                              u(2) * u(2) * Rational(23, 1440) + u(1) * u(3) * Rational(1, 60) +
                              u(6) * Rational(1, 2880);
    CHECK(tp.at({1, 2}) == expected);
}

TEST_CASE("general two-point properties") {
    const int K = 8;
    auto tp = two_point_general(K);
    DiffSeries R = resolvent(K);
    for (int p = 0; p <= K; ++p)
        for (int q = 0; p + q <= K; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            CHECK(tp.at({p, q}) == tp.at({q, p}));
            CHECK(dispersionless(tp.at({p, q})) ==
                  u_power(p + q + 1) *
                      Rational(Integer(1), factorial(p) * factorial(q) * (p + q + 1)));
        }
    for (int j = 0; j <= K; ++j)
        CHECK(R.coefficient(-2 * j - 2) == tp.at({0, j}) * Rational(double_factorial(2 * j + 1)));
}
