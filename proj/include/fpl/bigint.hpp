#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fpl/errors.hpp"

namespace fpl {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

// "p/q" for non-integers, plain integer text otherwise.
inline std::string to_string(const BigRational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_str();
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const BigRational& v) { return v.get_den() == 1; }

inline BigInt factorial(long m) {
    if (m < 0) throw DomainError("factorial of a negative number");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
    return r;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigRational pow_rat(const BigRational& base, unsigned long e) {
    BigRational r(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
    r.canonicalize();
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Exact integer value of a rational known to be integral.
inline BigInt require_integer(const BigRational& v, const std::string& what) {
    if (!is_integer(v)) throw StructuralFailure(what + " is not an integer: " + to_string(v));
    return v.get_num();
}

} // namespace fpl
