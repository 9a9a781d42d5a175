#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tseq/chains.hpp"
#include "tseq/patterns.hpp"

namespace tseq {

/// The start index m = 10*t below which no bounded pattern can reach g:
///   split family:    t = |b| + p(k+1)        for g = a e + b
///   Prufer family:   t = p(k+1) + max(z, c)  for g with denominator p^z
///   integer family:  t = |b| + (k+1)(q + gamma)
/// Throws ZeroTarget for g = 0 (every pattern bound excludes 0 trivially
/// only when g is nonzero).
long witness_m(const SequenceSpec& spec, const Element& g, long k);

/// Exact minimum gap between g and all enumerated pattern values sharing a
/// largest index, one row per (largest index, parity of that index).
/// On Z(p^inf) the gap is the step count den(value - g) * |value - g|: the
/// circle distance of the odd tails shrinks by construction, while the step
/// count at the difference's own resolution grows and is zero exactly on a
/// counterexample.
struct MinGapRow {
  long max_index = 0;
  bool odd = false;
  Rational min_gap = 0;
};

struct NonMembershipReport {
  SequenceSpec spec;
  Element target = Element::integer(0);
  long k = 0;
  long m = 0;
  long horizon = 0;
  unsigned long long pattern_count = 0;
  /// true iff no enumerated pattern evaluates to g.
  bool exhaustive_clear = false;
  std::optional<SumPattern> counterexample;
  std::vector<MinGapRow> min_gap_by_max_index;  // ascending max_index
  std::vector<ChainReport> chain_samples;       // optional illustrative chains

  /// Within each parity class, min gaps never decrease as the largest index
  /// grows (the two parities scale differently and are tracked separately).
  bool min_gap_monotone_by_parity() const;
};

/// Enumerates every pattern with distinct indices in [m, horizon] and weight
/// <= k+1, comparing each exact value against g.
NonMembershipReport check_not_in_A(const SequenceCache& seq, const Element& g, long k, long m,
                                   long horizon, long chain_samples = 0,
                                   std::uint64_t chain_seed = 1);

/// Draws `sample_count` seeded pattern shapes, round-robin over the chain
/// cases feasible for this family and k, and evaluates each chain.  Samples
/// whose evaluation trips the magnitude guard are returned with
/// skipped_reason set instead of lines.
std::vector<ChainReport> sample_chain_suite(const SequenceCache& seq, const Element& g, long k,
                                            long sample_count, std::uint64_t seed);

/// The case ids sample_chain_suite can instantiate for this family at this k.
std::vector<ChainCase> feasible_chain_cases(const SequenceSpec& spec, long k);

}  // namespace tseq
