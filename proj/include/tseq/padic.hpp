#pragma once

#include <string>

#include "tseq/bigint.hpp"

namespace tseq {

/// A p-adic integer known modulo p^precision: the residue class
/// residue + O(p^precision).  Digits beyond the precision are unknown, and
/// asking for them raises PrecisionExhausted.
class TruncatedPAdic {
 public:
  TruncatedPAdic(unsigned prime, unsigned precision, BigInt residue);

  unsigned prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  /// Canonical residue in [0, p^precision).
  const BigInt& residue() const { return residue_; }

  /// Residue modulo p^k; requires k <= precision().
  BigInt residue_mod(unsigned k) const;

  TruncatedPAdic operator+(const TruncatedPAdic& o) const;
  TruncatedPAdic operator-() const;
  TruncatedPAdic scaled(const BigInt& n) const;

  bool is_zero() const { return residue_ == 0; }
  bool operator==(const TruncatedPAdic& o) const;

  /// "r+O(p^N)".
  std::string str() const;

 private:
  unsigned prime_;
  unsigned precision_;
  BigInt residue_;
  BigInt modulus_;
};

}  // namespace tseq
