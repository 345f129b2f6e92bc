#pragma once

// Exact scalars. Every numeric value that leaves this library is a GMP
// rational in lowest terms.

#include <gmpxx.h>

#include <string>

namespace taut {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" in lowest terms with q > 0, or "p" when q == 1.
inline std::string to_string(const Rational& x) {
  Rational y = x;
  y.canonicalize();
  return y.get_str();
}

inline std::string to_string(const Integer& x) { return x.get_str(); }

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Integer power(long base, unsigned long exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exponent);
  if (base < 0 && exponent % 2 == 1) out = -out;
  return out;
}

}  // namespace taut
