#include "tseq/bigint.hpp"

#include <atomic>
#include <cstdlib>

namespace tseq {

namespace {

std::atomic<std::uint64_t>& guard_bits() {
  static std::atomic<std::uint64_t> bits{ExponentGuard::kDefaultMaxBits};
  return bits;
}

}  // namespace

std::uint64_t ExponentGuard::max_bits() { return guard_bits().load(); }

void ExponentGuard::set_max_bits(std::uint64_t bits) {
  if (bits == 0) throw Error("exponent guard must be positive");
  guard_bits().store(bits);
}

std::uint64_t ExponentGuard::configure_from_environment() {
  if (const char* raw = std::getenv("TSEQ_MAX_POWER_BITS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
      throw ParseError(std::string("TSEQ_MAX_POWER_BITS: invalid value '") + raw + "'");
    set_max_bits(v);
  }
  return max_bits();
}

BigInt pow_checked(const BigInt& base, unsigned long exp) {
  if (base == 0) return exp == 0 ? BigInt(1) : BigInt(0);
  // Upper estimate: |base^exp| < 2^(exp * bits(base)).
  std::uint64_t base_bits = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (base_bits > 1 || base < -1 || base > 1) {
    if (static_cast<std::uint64_t>(exp) * base_bits > ExponentGuard::max_bits())
      throw ExponentTooLarge("power of " + base.get_str() + " with exponent " +
                             std::to_string(exp) + " exceeds the " +
                             std::to_string(ExponentGuard::max_bits()) +
                             "-bit magnitude guard");
  }
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

unsigned long valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw Error("valuation of zero is undefined");
  if (p < 2) throw Error("valuation base must be >= 2");
  BigInt rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

bool divides(const BigInt& d, const BigInt& n) {
  if (d == 0) throw Error("division by zero");
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

SmoothSplit smooth_split(const BigInt& n, const BigInt& base) {
  if (n < 1 || base < 2) throw Error("smooth_split requires n >= 1, base >= 2");
  BigInt rough = n;
  for (;;) {
    BigInt g = gcd(rough, base);
    if (g == 1) break;
    // Strip every occurrence of g, then retry with whatever part of base
    // still shares factors.
    BigInt rest;
    mpz_remove(rest.get_mpz_t(), rough.get_mpz_t(), g.get_mpz_t());
    rough = std::move(rest);
  }
  return SmoothSplit{n / rough, rough};
}

unsigned long smooth_log(const BigInt& n, const BigInt& base) {
  if (n < 1 || base < 2) throw Error("smooth_log requires n >= 1, base >= 2");
  if (n == 1) return 0;
  // n | base^e forces e <= log2(n), so the loop below terminates quickly
  // whenever n is base-smooth.
  std::uint64_t cap = mpz_sizeinbase(n.get_mpz_t(), 2) + 1;
  BigInt pw = 1;
  for (unsigned long e = 1; e <= cap; ++e) {
    pw = (pw * base) % n;
    if (pw == 0) return e;
  }
  throw Error(n.get_str() + " has a prime factor outside base " + base.get_str());
}

unsigned long multiplicative_order(const BigInt& base, const BigInt& n) {
  if (n < 1) throw Error("order modulo n requires n >= 1");
  if (n == 1) return 1;
  if (gcd(base, n) != 1) throw Error("order undefined: gcd(base, modulus) != 1");
  BigInt b = base % n;
  if (b < 0) b += n;
  BigInt pw = b;
  unsigned long e = 1;
  while (pw != 1) {
    pw = (pw * b) % n;
    ++e;
  }
  return e;
}

std::string to_decimal(const BigInt& n) { return n.get_str(); }

}  // namespace tseq
