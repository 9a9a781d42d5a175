#pragma once

#include <map>
#include <mutex>
#include <string>

#include "tseq/element.hpp"

namespace tseq {

/// One of the three generated sequence families.  All three interleave fast
/// even-position terms (plain powers of the base) with odd-position terms
/// built from a fixed offset plus the power tail tail_power_sum(base, n).
struct SequenceSpec {
  enum class Family { SplitSum, PruferSum, IntegerGamma };

  Family family = Family::IntegerGamma;
  unsigned base = 2;        // prime p (SplitSum/PruferSum) or any q >= 2
  BigInt gamma = 1;         // IntegerGamma offset, >= 1
  unsigned order_exp = 1;   // PruferSum: the fixed summand u = 1/p^order_exp
  unsigned torsion_coeff = 1;  // SplitSum: coefficient of e, in [1, p)

  /// Terms live in Z(p) + Z; odd terms are a*e + tail, even terms p^n.
  static SequenceSpec split_sum(unsigned p, unsigned torsion_coeff = 1);
  /// Terms live in Z(p^inf); odd terms u + sum 1/p^(n^3 - jn), even 1/p^n.
  static SequenceSpec prufer_sum(unsigned p, unsigned order_exp);
  /// Terms live in Z; odd terms gamma + tail, even terms q^n.
  static SequenceSpec integer_gamma(unsigned q, BigInt gamma);

  Ambient ambient() const;
  Ambient dual_ambient() const { return ambient().dual(); }

  /// CLI echo, e.g. "integer-gamma(q=3, gamma=3)".
  std::string str() const;

  bool operator==(const SequenceSpec&) const = default;
};

/// Block/parity view of a 1-based index: index 2n-1 is the odd term of block
/// n, index 2n the even term of block n.
struct TermIndex {
  long index = 1;
  long block = 1;
  bool odd = true;

  static TermIndex of(long index);
  /// Number of summands of the term: odd terms have block+2 (offset plus
  /// block+1 tail powers), even terms are a single power.
  long summand_count() const { return odd ? block + 2 : 1; }
};

/// sum_{j=0..n} base^(n^3 - j*n): the shared tail of every odd term.
/// Throws ExponentTooLarge past the magnitude guard.
BigInt tail_power_sum(unsigned base, long n);

/// Exact 1-based n-th term of the family.
Element seq_term(const SequenceSpec& spec, long n);

/// Thread-safe memoised view of one family's terms.
class SequenceCache {
 public:
  explicit SequenceCache(SequenceSpec spec) : spec_(std::move(spec)) {}

  const SequenceSpec& spec() const { return spec_; }
  /// Reference stays valid for the cache's lifetime (nodes are never erased).
  const Element& term(long n) const;

 private:
  SequenceSpec spec_;
  mutable std::mutex mu_;
  mutable std::map<long, Element> memo_;
};

}  // namespace tseq
