#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace toric {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat make_rat(long long num, long long den = 1) { return Rat(num, den); }

inline Rat factorial(unsigned n) {
    Rat r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Rat binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

inline Int numerator_of(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator_of(const Rat& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const Rat& r) { return r.str(); }

inline bool is_integer(const Rat& r) { return denominator_of(r) == 1; }

}  // namespace toric
