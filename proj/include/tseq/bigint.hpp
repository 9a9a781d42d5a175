#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "tseq/errors.hpp"

namespace tseq {

/// Arbitrary-precision integer.  All arithmetic in the library is exact.
using BigInt = mpz_class;
/// Arbitrary-precision rational, kept in canonical (reduced) form by GMP.
using Rational = mpq_class;

/// Process-wide cap on the bit size of any computed power.  Exceeding it
/// raises ExponentTooLarge instead of silently allocating huge numbers.
class ExponentGuard {
 public:
  static constexpr std::uint64_t kDefaultMaxBits = std::uint64_t{1} << 21;

  static std::uint64_t max_bits();
  static void set_max_bits(std::uint64_t bits);

  /// Reads TSEQ_MAX_POWER_BITS from the environment (done once by the CLI;
  /// library users call set_max_bits directly).  Returns the active cap.
  static std::uint64_t configure_from_environment();
};

/// base^exp, guarded: throws ExponentTooLarge when the result would exceed
/// ExponentGuard::max_bits() bits (estimated from above, so the guard may
/// trip slightly before the exact bit count reaches the cap).
BigInt pow_checked(const BigInt& base, unsigned long exp);

/// Largest e with p^e dividing n.  Requires n != 0 and p >= 2.
unsigned long valuation(const BigInt& n, const BigInt& p);

/// True when d divides n (d != 0).
bool divides(const BigInt& d, const BigInt& n);

/// Splits n >= 1 into (s, r) with n = s*r, every prime of s dividing base,
/// and gcd(r, base-primes) = 1.  r == 1 exactly when n is base-smooth.
struct SmoothSplit {
  BigInt smooth;
  BigInt rough;
};
SmoothSplit smooth_split(const BigInt& n, const BigInt& base);

/// Smallest e >= 0 with n | base^e, when it exists (n base-smooth).
/// Throws Error otherwise.
unsigned long smooth_log(const BigInt& n, const BigInt& base);

/// Multiplicative order of base modulo n (requires gcd(base, n) = 1, n >= 1).
unsigned long multiplicative_order(const BigInt& base, const BigInt& n);

/// Decimal rendering used by reports; exact value, no truncation.
std::string to_decimal(const BigInt& n);

}  // namespace tseq
