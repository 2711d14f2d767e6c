#include "kdvtau/kappa.hpp"

#include "kdvtau/factorial.hpp"
#include "kdvtau/faber_zagier.hpp"
#include "kdvtau/npoint.hpp"

#include <functional>
#include <stdexcept>

namespace kdvtau {

std::optional<int> mixed_genus(const Partition &lambda, const std::vector<int> &ks) {
    long sum = lambda.weight();
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

Rational mixed_correlator(const Partition &lambda, const std::vector<int> &ks) {
    if (!mixed_genus(lambda, ks))
        return Rational(0);
    if (lambda.length() == 0)
        return correlator(ks);
    Rational total;
    for (const Partition &mu : partitions_of(lambda.weight())) {
        Integer L = L_entry(lambda, mu);
        if (L == 0)
            continue;
        std::vector<int> all;
        for (int m : mu.parts())
            all.push_back(m + 1);
        all.insert(all.end(), ks.begin(), ks.end());
        Rational term = Rational(L, mu.multiplicity_factorial()) * correlator(all);
        total += mu.length() % 2 ? -term : term;
    }
    return lambda.length() % 2 ? -total : total;
}

Rational mixed_s_coefficient(const Partition &lambda, const std::vector<int> &ks) {
    return mixed_correlator(lambda, ks) / Rational(lambda.multiplicity_factorial());
}

Rational kappa_from_one_point(int j) {
    if (j < 0)
        throw std::invalid_argument("negative kappa index");
    const int G = (2 * j + 6 + 5) / 6;
    RationalSeries f1 = one_point_series(G);
    auto weight = RationalSeries::monomial("z", 2 * j + 3,
                                           Rational(Integer(-1), double_factorial(2L * j + 3)));
    return residue_at_infinity(weight * f1);
}

std::vector<WPEntry> wp_volume_coefficients(int g, int n) {
    const int dim = 3 * g - 3 + n;
    if (g < 0 || n < 0 || dim < 0)
        throw std::invalid_argument("wp volume needs 3g - 3 + n >= 0");
    std::vector<WPEntry> out;
    std::vector<int> ks(n);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            const int d = left;
            std::vector<int> ones(d, 1);
            Rational value = mixed_correlator(Partition(ones), ks);
            if (value.is_zero())
                return;
            WPEntry e;
            e.d = d;
            e.ks = ks;
            e.value = value;
            Integer wk = 1, vk = factorial(d);
            for (int k : ks) {
                wk *= double_factorial(2L * k + 1);
                vk *= factorial(k);
            }
            e.w_coefficient = value * Rational(wk) / Rational(factorial(d));
            e.v_coefficient = value / Rational(vk);
            out.push_back(std::move(e));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            ks[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, dim);
    return out;
}

} // namespace kdvtau
