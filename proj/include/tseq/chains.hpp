#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tseq/patterns.hpp"
#include "tseq/sequence.hpp"

namespace tseq {

/// The displayed inequality chains that certify sigma != g for one pattern
/// shape.  eq3/eq4/eq5 are the standalone numbered displays; case-a/b/c are
/// the even-only / odd-only / mixed pattern cases (each family interprets
/// them over its own ambient); prufer-geom is the standalone geometric-series
/// bound used by the mixed case over Z(p^inf).
enum class ChainCase { Eq3, CaseA, CaseB, CaseC, Eq4, Eq5, PruferGeom };

std::string to_string(ChainCase c);
std::optional<ChainCase> chain_case_from_string(const std::string& name);

/// One evaluated comparison.  lhs/rhs are the exact values compared; rel is
/// one of "<", "<=", ">", ">=", "==", "!=", "divides" (lhs divides rhs).
struct ChainLine {
  std::string text;
  Rational lhs = 0;
  Rational rhs = 0;
  std::string rel;
  bool holds = false;
};

/// Instantiated pattern shape for one chain evaluation.  Blocks are the
/// block numbers n of sequence positions: odd blocks r mean index 2r-1,
/// even blocks e mean index 2e.  Blocks must be strictly increasing within
/// each list, coefficients nonzero, total weight <= k+1.
struct ChainContext {
  Element target = Element::integer(0);  // g, nonzero, in the family's ambient
  long k = 0;
  long m = 0;  // anchor index; 0 = unconstrained (eq3, prufer-geom)
  std::vector<long> odd_blocks;
  std::vector<BigInt> odd_coeffs;
  std::vector<long> even_blocks;
  std::vector<BigInt> even_coeffs;
  /// prufer-geom evaluates lines at this block when no pattern is given.
  long geom_block = 0;
};

struct ChainReport {
  ChainCase case_id = ChainCase::Eq3;
  SequenceSpec spec;
  std::string context_summary;    // rendered pattern + target
  long i0 = 0;                    // mixed case band choice (0 = unused)
  std::vector<long> low_even_blocks;   // evens routed below the band
  std::vector<long> high_even_blocks;  // evens routed above the band
  std::string branch;             // e.g. "sigma''!=0"; empty if single-branch
  std::vector<ChainLine> lines;
  bool holds = false;             // conjunction of lines
  std::string skipped_reason;     // nonempty when the sample was skipped
};

/// Smallest i0 with 2 < i0 < r_s - 2 such that no later even block e
/// satisfies r_s^3 - (i0+2) r_s <= e <= r_s^3 - (i0-1) r_s.  The weight
/// bound k caps how many evens exist, so such an i0 exists whenever
/// r_s > 4k + 6; otherwise NoValidGap.
long select_i0(long r_s, const std::vector<long>& later_even_blocks, long k);

/// Evaluates every comparison of the given chain for the given sample,
/// each exactly.  Throws PreconditionViolated when the context does not
/// have the shape the chain requires.
ChainReport check_inequality_chain(const SequenceCache& seq, ChainCase case_id,
                                   const ChainContext& ctx);

namespace detail {
/// The sigma''=0 branch tail of the mixed case, evaluated from exact inputs;
/// exposed so the branch can be exercised directly (valid weight-bounded
/// patterns always produce sigma'' != 0).
std::vector<ChainLine> mixed_case_zero_branch_lines(unsigned base, long k, long r_s, long i0,
                                                    const BigInt& middle_abs,
                                                    const BigInt& small_abs,
                                                    const Rational& target_bound);
}  // namespace detail

}  // namespace tseq
