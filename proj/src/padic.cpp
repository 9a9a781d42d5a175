#include "tseq/padic.hpp"

#include <algorithm>

namespace tseq {

TruncatedPAdic::TruncatedPAdic(unsigned prime, unsigned precision, BigInt residue)
    : prime_(prime), precision_(precision), residue_(std::move(residue)) {
  if (prime_ < 2) throw Error("p-adic prime must be >= 2");
  if (precision_ == 0) throw Error("p-adic precision must be >= 1");
  modulus_ = pow_checked(BigInt(prime_), precision_);
  mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
}

BigInt TruncatedPAdic::residue_mod(unsigned k) const {
  if (k > precision_)
    throw PrecisionExhausted("digit " + std::to_string(k) + " of a p-adic known only to O(" +
                             std::to_string(prime_) + "^" + std::to_string(precision_) + ")");
  BigInt m = pow_checked(BigInt(prime_), k);
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
  return r;
}

TruncatedPAdic TruncatedPAdic::operator+(const TruncatedPAdic& o) const {
  if (prime_ != o.prime_) throw MismatchedAmbient("adding p-adics over different primes");
  unsigned prec = std::min(precision_, o.precision_);
  return TruncatedPAdic(prime_, prec, residue_ + o.residue_);
}

TruncatedPAdic TruncatedPAdic::operator-() const {
  return TruncatedPAdic(prime_, precision_, -residue_);
}

TruncatedPAdic TruncatedPAdic::scaled(const BigInt& n) const {
  return TruncatedPAdic(prime_, precision_, n * residue_);
}

bool TruncatedPAdic::operator==(const TruncatedPAdic& o) const {
  return prime_ == o.prime_ && precision_ == o.precision_ && residue_ == o.residue_;
}

std::string TruncatedPAdic::str() const {
  return residue_.get_str() + "+O(" + std::to_string(prime_) + "^" +
         std::to_string(precision_) + ")";
}

}  // namespace tseq
