#include "kdvtau/partition.hpp"

#include "kdvtau/factorial.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kdvtau {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
        if (p <= 0)
            throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::weight() const {
    int w = 0;
    for (int p : parts_)
        w += p;
    return w;
}

int Partition::multiplicity(int i) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

Integer Partition::multiplicity_factorial() const {
    Integer r = 1;
    for (std::size_t a = 0; a < parts_.size();) {
        std::size_t b = a;
        while (b < parts_.size() && parts_[b] == parts_[a])
            ++b;
        r *= factorial(static_cast<long>(b - a));
        a = b;
    }
    return r;
}

SMonomial Partition::s_exponents() const {
    SMonomial m(parts_.empty() ? 0 : parts_.front(), 0);
    for (int p : parts_)
        m[p - 1] += 1;
    return m;
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i)
        s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
}

std::vector<Partition> partitions_of(int n) {
    if (n < 0)
        throw std::invalid_argument("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int max_part) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(left, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

Integer L_entry(const Partition &lambda, const Partition &mu) {
    if (lambda.weight() != mu.weight())
        throw std::invalid_argument("L_entry: partitions of different weight");
    const int ones = lambda.multiplicity(1);
    std::vector<int> big;
    for (int p : lambda.parts())
        if (p > 1)
            big.push_back(p);
    std::vector<int> room(mu.parts().begin(), mu.parts().end());
    const Integer ones_factorial = factorial(ones);
    Integer total = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == big.size()) {
            // Multinomial m_1! / prod r_i! over the leftover room.
            Integer denom = 1;
            for (int r : room)
                denom *= factorial(r);
            total += ones_factorial / denom;
            return;
        }
        for (auto &r : room) {
            if (r < big[j])
                continue;
            r -= big[j];
            rec(j + 1);
            r += big[j];
        }
    };
    rec(0);
    return total;
}

std::vector<std::vector<Integer>> kappa_matrix(int n) {
    auto ps = partitions_of(n);
    std::vector<std::vector<Integer>> m(ps.size(), std::vector<Integer>(ps.size()));
    for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = 0; b < ps.size(); ++b) {
            Integer l = L_entry(ps[a], ps[b]);
            Integer d = ps[b].multiplicity_factorial();
            if (l % d != 0)
                throw std::logic_error("kappa entry is not an integer for " + ps[a].to_string() +
                                       ", " + ps[b].to_string());
            m[a][b] = l / d;
        }
    return m;
}

std::vector<SparsePoly> h_polynomials(int K, int weight_cap) {
    std::vector<SparsePoly> h;
    h.emplace_back(Rational(1), weight_cap);
    for (int k = 1; k <= K; ++k) {
        SparsePoly acc(Rational(0), weight_cap);
        for (int j = 1; j <= k; ++j)
            acc += SparsePoly::variable(j, weight_cap) * h[k - j] * Rational(j);
        h.push_back(acc * Rational(1, k));
    }
    return h;
}

Integer bell_number(int k) {
    if (k < 0)
        throw std::invalid_argument("bell number of negative index");
    std::vector<Integer> row{1};
    for (int i = 0; i < k; ++i) {
        std::vector<Integer> next{row.back()};
        for (const Integer &x : row)
            next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

} // namespace kdvtau
