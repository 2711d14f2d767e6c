#include "kdvtau/fkappa.hpp"

#include "kdvtau/trace_engine.hpp"
#include "kdvtau/wave.hpp"

#include <stdexcept>

namespace kdvtau {

DeformedSeries deformed_series(int weight, int floor) {
    DeformedSeries r{SSeries("z", floor), SSeries("z", floor)};
    for (const auto &pair : deformed_waves(weight)) {
        SparsePoly s = SparsePoly::monomial(pair.lambda.s_exponents(), Rational(1), weight);
        auto lift = [&](const CQForm &f) {
            return f.expand(floor).map_coefficients([&](const Rational &c) { return s * c; });
        };
        r.A += lift(pair.A);
        r.B += lift(pair.B);
    }
    return r;
}

Mat2<SSeries> kappa_m_matrix(int weight, int floor) {
    DeformedSeries w = deformed_series(weight, floor - 2);
    SSeries Ab = w.A.negated_variable(), Bb = w.B.negated_variable();
    SSeries cross = w.A * Bb + Ab * w.B;
    Mat2<SSeries> m;
    m(0, 0) = (cross * Rational(-1, 2)).truncated(floor);
    m(0, 1) = (-(w.A * Ab)).truncated(floor);
    m(1, 0) = (w.B * Bb).truncated(floor);
    m(1, 1) = (cross * Rational(1, 2)).truncated(floor);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!m(i, j).known(floor))
                throw TruncationError("deformed M-matrix too shallow");
    return m;
}

namespace {

void record(std::map<FKappaKey, Rational> &out, const SparsePoly &p, const std::vector<int> &ks) {
    for (const auto &[mono, c] : p.terms())
        out.emplace(FKappaKey{mono, ks}, c);
}

} // namespace

std::map<FKappaKey, Rational> f_kappa_n(int n, int weight, int k_max, int workers) {
    if (n < 1)
        throw std::invalid_argument("f_kappa_n needs n >= 1");
    if (weight < 0 || k_max < 0)
        throw std::invalid_argument("negative truncation");
    std::map<FKappaKey, Rational> out;
    if (n == 1) {
        const int target = -2 * k_max - 2;
        DeformedSeries w = deformed_series(weight, target - 4);
        SSeries Az = w.A.derivative(), Bz = w.B.derivative();
        SSeries sum = Bz * w.A.negated_variable() + w.B * Az.negated_variable() -
                      w.A * Bz.negated_variable() - Az * w.B.negated_variable();
        SSeries f = (sum * Rational(1, 4)).shifted(-1);
        if (!f.known(target))
            throw TruncationError("one-point deformed series too shallow");
        for (int k = 0; k <= k_max; ++k)
            record(out, f.coefficient(-2 * k - 2), {k});
        return out;
    }
    std::vector<int> degrees;
    for (int d = n; d <= n * (k_max + 1); ++d)
        degrees.push_back(d);
    const int depth = std::max(0, trace_matrix_depth(n, degrees.back()));
    auto M = matrix_to_x(kappa_m_matrix(weight, -2 * depth), depth);
    TraceOptions opt;
    opt.workers = workers;
    auto F = trace_formula(M, n, degrees, opt);
    for (const auto &[d, comp] : F)
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
                record(out, c, ks);
        }
    return out;
}

} // namespace kdvtau
