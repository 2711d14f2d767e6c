#pragma once

#include "kdvtau/rational.hpp"

#include <stdexcept>

namespace kdvtau {

// n!! with (-1)!! = 1.
inline Integer double_factorial(long n) {
    if (n < -1)
        throw std::domain_error("double factorial of n < -1");
    Integer r = 1;
    for (long k = n; k > 1; k -= 2)
        r *= k;
    return r;
}

inline Integer factorial(long n) {
    if (n < 0)
        throw std::domain_error("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace kdvtau
