// Witten-Kontsevich n-point correlators from the M-matrix trace formula.
#pragma once

#include "kdvtau/faber_zagier.hpp"
#include "kdvtau/rational.hpp"
#include "kdvtau/trace_engine.hpp"

#include <map>
#include <optional>
#include <vector>

namespace kdvtau {

// Genus from sum k_i = 3g - 3 + n, or nullopt when no integer g >= 0 fits.
std::optional<int> genus_of(const std::vector<int> &ks);

struct TableOptions {
    int workers = 1;
    // Depth of M in powers of X = z^{-2}; 0 selects the minimum.  Explicit
    // values below the minimum are rejected unless `unchecked` is set.
    int depth = 0;
    bool unchecked = false;
};

struct CorrelatorTable {
    int n = 0;
    int k_max = 0;
    int depth = 0;
    // Every ordered tuple with all k_i <= k_max and a nonzero value.
    std::map<std::vector<int>, Rational> values;

    Rational at(const std::vector<int> &ks) const;
    // Nonzero entries with k_1 <= ... <= k_n.
    std::map<std::vector<int>, Rational> sorted_entries() const;
};

// M-matrix depth the table needs.
int minimum_depth(int n, int k_max);

// The M-matrix in X through X^{depth}.
XMatrix<Rational> wk_matrix_x(int depth, bool checked = true);

CorrelatorTable n_point_table(int n, int k_max, const TableOptions &opt = {});

struct VerifyReport {
    int depth = 0;
    int doubled_depth = 0;
    std::size_t mismatches = 0;
    bool ok() const { return mismatches == 0; }
};

// Recomputes the table at twice its depth and counts differing entries.
VerifyReport verify_table(const CorrelatorTable &table, int workers = 1);

// Single coefficient of F_n at prod X_i^{ks_i + 1} by expanding every
// necklace term in the region |z_1| > ... > |z_n|.  Does not divide by the
// double factorials.
Rational region_coefficient(const std::vector<int> &ks);

// <tau_k1 ... tau_kn> for any n >= 1.
Rational correlator(const std::vector<int> &ks);

enum class Normalization { plain, witten, kontsevich };

// plain: <tau>; witten: prod (2k_i+1)!! <tau>; kontsevich: prod (2k_i-1)!! <tau>.
std::map<std::vector<int>, Rational> normalization_convert(const CorrelatorTable &table,
                                                           Normalization mode);

} // namespace kdvtau
