#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tseq/sequence.hpp"
#include "tseq/subgroup.hpp"

namespace tseq {

/// Raised when no candidate descriptor matches an accepted point set.
/// Carries the raw accepted set (canonical element text).
class RecognitionFailed : public Error {
 public:
  RecognitionFailed(const std::string& what, std::vector<std::string> accepted)
      : Error(what), accepted_(std::move(accepted)) {}
  const std::vector<std::string>& accepted() const { return accepted_; }

 private:
  std::vector<std::string> accepted_;
};

/// Raised when several candidate descriptors survive window refinement.
class RecognitionAmbiguous : public Error {
 public:
  RecognitionAmbiguous(const std::string& what, std::vector<std::string> accepted,
                       std::vector<std::string> candidates)
      : Error(what), accepted_(std::move(accepted)), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& accepted() const { return accepted_; }
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  std::vector<std::string> accepted_;
  std::vector<std::string> candidates_;
};

/// How the pairing sequence ((d_n, chi))_n behaves, with exact certificates.
/// Membership in the accepted subgroup means the sequence tends to 0.
struct ConvergenceClass {
  enum class Tag {
    EventuallyZero,      // all terms vanish from zero_from() on
    NullByDecay,         // terms tend to 0 under an explicit decaying bound
    ConvergesToNonzero,  // terms settle on `limit` != 0
    NonConvergent,       // an exact recurring nonzero value on an arithmetic
                         // subsequence of even positions
    Inconclusive,        // truncated character: digits beyond the precision
                         // would be needed
  };

  Tag tag = Tag::Inconclusive;
  bool member() const { return tag == Tag::EventuallyZero || tag == Tag::NullByDecay; }

  // Certificates (filled according to tag):
  long even_zero_from = 0;   // even-position terms vanish from this block on
  long odd_settle_from = 0;  // odd-position terms equal `limit` (split/integer)
                             // or lie within the decay bound of it (Prufer)
  CircleRational limit;      // odd-side limit (zero for the null tags)
  CircleRational recurring;  // NonConvergent: exact value recurring at even
  long recur_start = 0;      //   blocks recur_start + j*recur_period
  long recur_period = 0;
  BigInt decay_scale = 0;    // Prufer: even-term norm <= decay_scale / p^n
  long evaluated_to = 0;     // Inconclusive: largest index still decidable
  std::string detail;

  /// EventuallyZero: every term with index >= this vanishes.
  long zero_from() const;
};

/// Exact, closed-form classification of ((d_n, chi))_n for a character chi of
/// the family's dual ambient.  No thresholds: smoothness of denominators and
/// multiplicative orders decide everything.  Truncated p-adic characters are
/// Inconclusive (membership depends on digits beyond any finite precision).
ConvergenceClass classify_pairing_limit(const SequenceSpec& spec, const Element& chi);

/// Membership verdict only (the decision half of classify_pairing_limit,
/// skipping certificate construction).  Truncated characters raise
/// PrecisionExhausted instead of an Inconclusive report.
bool pairing_tends_to_zero(const SequenceSpec& spec, const Element& chi);

/// Re-checks a classification by evaluating actual sequence terms at indices
/// in [1, n_max] against the certificate.  Throws Error on any mismatch.
/// n_max only bounds this witness check; it never decides membership.
void verify_certificate(const SequenceSpec& spec, const Element& chi,
                        const ConvergenceClass& cls, long n_max);

/// Picks the unique candidate descriptor whose window equals `accepted`,
/// refining with larger windows (classifying the new points via `is_member`)
/// until a single candidate survives.  Throws RecognitionFailed /
/// RecognitionAmbiguous.
Subgroup recognize_subgroup(const Ambient& dual_ambient, const std::vector<Element>& accepted,
                            const BigInt& bound,
                            const std::function<bool(const Element&)>& is_member);

struct ScanResult {
  SequenceSpec spec;
  BigInt bound = 0;
  long n_max = 0;
  std::vector<Element> window;            // the scanned dual window, sorted
  std::vector<ConvergenceClass> classes;  // parallel to window
  std::vector<Element> accepted;          // members, sorted
  Subgroup recognized = Subgroup::zero(Ambient::integers());
};

/// Classifies every character in the dual window of size `bound`, verifies
/// each certificate on [1, n_max], and recognizes the accepted set.
/// For the Prufer family this scans exact integers of Z_p (denominator
/// windows make no sense there), i.e. equals scan_s_u_prufer_dual.
ScanResult scan_s_u(const SequenceSpec& spec, const BigInt& bound, long n_max);

/// The integer-character scan of the Prufer family's dual: all exact z with
/// |z| <= window.  Accepted are exactly the multiples of p^c; the recognized
/// descriptor is that integer subgroup (its p-adic closure is taken later).
ScanResult scan_s_u_prufer_dual(const SequenceSpec& spec, const BigInt& window, long n_max = 40);

}  // namespace tseq
