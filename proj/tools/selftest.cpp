#include "selftest.hpp"

#include "kdvtau/factorial.hpp"
#include "kdvtau/faber_zagier.hpp"
#include "kdvtau/kdv.hpp"
#include "kdvtau/npoint.hpp"
#include "kdvtau/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kdvtau::tools {

namespace {

template <class C>
bool vanishes_through(const LaurentSeries<C> &s, int floor) {
    return s.known(floor) && s.truncated(floor).is_zero();
}

CheckResult check(const std::string &name, const std::function<std::string()> &body) {
    try {
        std::string failure = body();
        return {name, failure.empty(), failure};
    } catch (const std::exception &e) {
        return {name, false, e.what()};
    }
}

Mat2<RationalSeries> identity_times_z2(int floor) {
    Mat2<RationalSeries> m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = RationalSeries("z", floor);
    m(0, 0).set(2, Rational(1));
    m(1, 1).set(2, Rational(1));
    return m;
}

std::string compare_matrices(const Mat2<RationalSeries> &a, const Mat2<RationalSeries> &b,
                             int floor) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (!a(i, j).known(floor) || !b(i, j).known(floor))
                return "entry not known through z^" + std::to_string(floor);
            if (!agree(a(i, j).truncated(floor), b(i, j).truncated(floor)))
                return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       ") differs";
        }
    return {};
}

} // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions &opt) {
    std::vector<CheckResult> out;

    out.push_back(check("faber-zagier wronskian", [&]() -> std::string {
        FaberZagier fz = fz_series(20);
        if (opt.corrupt_c1)
            fz.c.set(-3, fz.c.coefficient(-3) + Rational(1));
        RationalSeries w = fz.c * fz.q.negated_variable() + fz.c.negated_variable() * fz.q;
        w -= RationalSeries::monomial("z", 0, Rational(2));
        return vanishes_through(w, -60) ? "" : "c(z)q(-z) + c(-z)q(z) != 2";
    }));

    out.push_back(check("faber-zagier products", [&]() -> std::string {
        const int floor = -60;
        FaberZagier fz = fz_series(20);
        if (opt.corrupt_c1)
            fz.c.set(-3, fz.c.coefficient(-3) + Rational(1));
        const RationalSeries cb = fz.c.negated_variable(), qb = fz.q.negated_variable();
        RationalSeries cc("z"), qq("z"), cq("z"), qc("z");
        cq.set(0, Rational(1));
        qc.set(0, Rational(1));
        for (int g = 0; 6 * g <= -floor; ++g) {
            Rational a(double_factorial(6 * g - 1), Integer(pow(Rational(24), g).numerator()) *
                                                        factorial(g));
            cc.set(-6 * g, a);
            qq.set(-6 * g, -a * Rational(6 * g + 1, 6 * g - 1));
        }
        for (int g = 1; 6 * g - 3 <= -floor; ++g) {
            Rational b(double_factorial(6 * g - 5),
                       Integer(pow(Rational(24), g - 1).numerator()) * factorial(g - 1));
            cq.set(-6 * g + 3, -b / Rational(2));
            qc.set(-6 * g + 3, b / Rational(2));
        }
        const std::pair<const char *, RationalSeries> cases[] = {
            {"c(z)c(-z)", fz.c * cb - cc},
            {"q(z)q(-z)", fz.q * qb - qq},
            {"c(z)q(-z)", fz.c * qb - cq},
            {"q(z)c(-z)", fz.q * cb - qc},
        };
        for (const auto &[name, diff] : cases)
            if (!vanishes_through(diff, floor))
                return std::string(name) + " differs from its closed form";
        return {};
    }));

    out.push_back(check("m-matrix squares to z^2", [&]() -> std::string {
        auto m = m_matrix(31);
        return compare_matrices(m * m, identity_times_z2(-60), -60);
    }));

    out.push_back(check("m-matrix from wave functions", [&]() -> std::string {
        return compare_matrices(m_from_fz(30), m_matrix(30), -60);
    }));

    out.push_back(check("resolvent ode", [&]() -> std::string {
        const int K = 10;
        DiffSeries R = resolvent(K);
        DiffSeries Rx = x_derivative(R), Rxx = x_derivative(R, 2);
        DiffSeries coef("z");
        coef.set(0, DiffPoly::jet(0) * Rational(4));
        coef.set(2, DiffPoly(-2));
        DiffSeries res = R * Rxx - Rx * Rx * Rational(1, 2) + coef * R * R;
        res += DiffSeries::monomial("z", 2, DiffPoly(2));
        return vanishes_through(res, -2 * K) ? "" : "residual does not vanish";
    }));

    out.push_back(check("riccati equation", [&]() -> std::string {
        const int K = 20;
        DiffSeries chi = riccati_chi(K + 1);
        DiffSeries res = x_derivative(chi) + chi * chi;
        res += DiffSeries::monomial("z", 0, DiffPoly::jet(0) * Rational(2));
        res -= DiffSeries::monomial("z", 2, DiffPoly(1));
        return vanishes_through(res, -K) ? "" : "residual does not vanish";
    }));

    out.push_back(check("riccati from resolvent", [&]() -> std::string {
        DiffSeries R = resolvent(10);
        DiffSeries chi = riccati_chi(20);
        DiffSeries res = chi * R - x_derivative(R) * Rational(1, 2);
        res -= DiffSeries::monomial("z", 1, DiffPoly(1));
        return vanishes_through(res, -20) ? "" : "chi R != R_x/2 + z";
    }));

    out.push_back(check("kappa-matrix bell row sums", [&]() -> std::string {
        for (int n = 1; n <= 8; ++n) {
            auto ps = partitions_of(n);
            auto m = kappa_matrix(n);
            for (std::size_t a = 0; a < ps.size(); ++a) {
                Integer sum = 0;
                for (const Integer &x : m[a])
                    sum += x;
                if (sum != bell_number(ps[a].length()))
                    return "row " + ps[a].to_string() + " sums to " + sum.get_str();
            }
        }
        return {};
    }));

    out.push_back(check("theta at wk jets", [&]() -> std::string {
        DiffMatrix theta = theta_matrix(20);
        auto at_jets = theta.map([](const DiffSeries &s) {
            return s.map_coefficients(
                [](const DiffPoly &p) { return evaluate_at_jets(p, wk_jets()); });
        });
        return compare_matrices(at_jets, m_matrix(20), -40);
    }));

    out.push_back(check("symmetry of three-point table", [&]() -> std::string {
        TableOptions topt;
        topt.workers = opt.workers;
        CorrelatorTable t = n_point_table(3, 6, topt);
        for (const auto &[ks, v] : t.values) {
            std::vector<int> p = ks;
            std::sort(p.begin(), p.end());
            do {
                if (t.at(p) != v)
                    return "asymmetric entry";
            } while (std::next_permutation(p.begin(), p.end()));
        }
        return {};
    }));

    out.push_back(check("table spot-checks", [&]() -> std::string {
        struct Spot {
            std::vector<int> ks;
            const char *value;
        };
        const Spot spots[] = {
            {{1}, "1/24"},
            {{3, 2}, "29/5760"},
            {{2, 30}, "53/12148128371129859440640"},
            {{2, 2, 2}, "7/240"},
            {{2, 2, 2, 4}, "53/1152"},
            {{7, 7, 7, 7}, "538769781889/18492652781568000"},
        };
        for (const auto &s : spots)
            if (correlator(s.ks) != Rational::parse(s.value)) {
                std::ostringstream os;
                os << "mismatch at";
                for (int k : s.ks)
                    os << ' ' << k;
                return os.str();
            }
        return {};
    }));

    out.push_back(check("doubling check", [&]() -> std::string {
        TableOptions topt;
        topt.workers = opt.workers;
        if (opt.shallow) {
            topt.depth = std::max(1, minimum_depth(2, 12) / 2);
            topt.unchecked = true;
        }
        CorrelatorTable t = n_point_table(2, 12, topt);
        VerifyReport r = verify_table(t, opt.workers);
        if (r.ok())
            return {};
        return std::to_string(r.mismatches) + " entries change between depth " +
               std::to_string(r.depth) + " and " + std::to_string(r.doubled_depth);
    }));

    return out;
}

} // namespace kdvtau::tools
