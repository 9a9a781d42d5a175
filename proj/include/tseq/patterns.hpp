#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tseq/sequence.hpp"

namespace tseq {

/// A finite signed combination sum_i coeff_i * d_(index_i) over a sequence,
/// with strictly increasing indices and nonzero integer coefficients.
struct SumPattern {
  struct Term {
    long index;
    BigInt coeff;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;

  /// sum |coeff_i|.
  BigInt weight() const;
  long min_index() const;
  long max_index() const;
  bool empty() const { return terms.empty(); }

  /// e.g. "d70 - 2*d73".
  std::string str() const;
  bool operator==(const SumPattern&) const = default;
};

/// Visits, in a fixed deterministic order, every nonempty pattern whose
/// indices are distinct and lie in [m, horizon] and whose weight is at most
/// k + 1.  Requires k >= 0 and 1 <= m <= horizon.
void for_each_pattern(long k, long m, long horizon,
                      const std::function<void(const SumPattern&)>& visit);

std::vector<SumPattern> enumerate_patterns(long k, long m, long horizon);

/// Number of patterns for_each_pattern visits.
unsigned long long count_patterns(long k, long m, long horizon);

/// Exact value of the pattern in the family's ambient group.  The empty
/// pattern evaluates to the identity.
Element pattern_value(const SequenceCache& seq, const SumPattern& pattern);

}  // namespace tseq
