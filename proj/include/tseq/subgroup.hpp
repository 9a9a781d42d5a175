#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tseq/element.hpp"

namespace tseq {

/// Symbolic description of a subgroup of one of the supported ambients.
/// Subgroups are always manipulated symbolically; descriptor_points() produces
/// the finite window of actual elements used by scans and audits.
///
/// Shapes and their canonical text (parsed/printed relative to an ambient):
///   Zero               "0"
///   Whole              "Z", "T", "Z(p^inf)", "Zp(p)" depending on ambient
///   MultiplesOfQ q     "qZ(3)"            (q >= 2; inside Z or Z_p)
///   CyclicInCircle q   "Z(3)"             (the q-torsion cycle inside T)
///   PruferInCircle p   "Z(2^inf)"         (inside T or the circle factor)
///   FiniteCyclicPrufer "Z(2^3)"           (the cycle of order p^c in Z(p^inf))
///   PAdicBall p,v      "p^2*Zp(3)"        (p^v Z_p inside Z_p)
///   SplitProduct       "<torsion>+<second>", e.g. "Z(3)+0", "0+Z(2^inf)"
class Subgroup {
 public:
  enum class Shape {
    Zero,
    Whole,
    MultiplesOfQ,
    CyclicInCircle,
    PruferInCircle,
    FiniteCyclicPrufer,
    PAdicBall,
    SplitProduct,
  };
  /// The torsion factor of a split product is either trivial or everything.
  enum class TorsionPart { Zero, Whole };

  static Subgroup zero(const Ambient& a);
  static Subgroup whole(const Ambient& a);
  static Subgroup multiples_of(const Ambient& a, BigInt q);        // q >= 1
  static Subgroup cyclic_in_circle(BigInt q);                      // q >= 1
  static Subgroup prufer_in_circle(unsigned p);
  static Subgroup finite_cyclic_prufer(unsigned p, unsigned c);
  static Subgroup padic_ball(unsigned p, unsigned v);
  static Subgroup split_product(const Ambient& split_ambient, TorsionPart torsion,
                                Subgroup second_factor);

  const Ambient& ambient() const { return ambient_; }
  Shape shape() const { return shape_; }
  const BigInt& modulus() const;       // MultiplesOfQ / CyclicInCircle
  unsigned exponent() const;           // FiniteCyclicPrufer c / PAdicBall v
  TorsionPart torsion_part() const;    // SplitProduct
  const Subgroup& second_factor() const;  // SplitProduct

  /// Structural equality of canonical forms ("qZ(1)" == whole, etc.).
  bool operator==(const Subgroup& o) const;
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

  std::string str() const;
  static Subgroup parse(const std::string& text, const Ambient& a);

 private:
  Subgroup(Ambient a, Shape s) : ambient_(a), shape_(s) {}

  Ambient ambient_;
  Shape shape_;
  BigInt q_ = 0;
  unsigned exp_ = 0;
  TorsionPart torsion_ = TorsionPart::Zero;
  std::shared_ptr<const Subgroup> second_;

  void normalize();
};

/// The finite window of a descriptor: exactly the descriptor's intersection
/// with the ambient window of bound B, sorted canonically.
///   Z / SplitGroup free part:  integers with |x| <= B
///   Circle / Prufer / SplitDual circle part:  denominator <= B
///   PAdic:  exact integers with |x| <= B
/// B >= 1 required.
std::vector<Element> descriptor_points(const Subgroup& d, const BigInt& bound);

/// Exact membership of a single element in a descriptor (no window involved).
/// The element must belong to the descriptor's ambient (MismatchedAmbient).
bool descriptor_contains(const Subgroup& d, const Element& g);

/// Topological closure of a dual-side descriptor inside its ambient:
///   in T:   finite cycles are closed, Z(p^inf) is dense (closure = T)
///   in Z_p: the integer multiples of q close to the ball p^{v_p(q)} Z_p
///   split duals close factorwise.
/// Other ambients carry the discrete topology here and are rejected
/// (UnsupportedAmbient).
Subgroup closure(const Subgroup& d);

/// Annihilator of a closed dual-side descriptor: the subgroup of the predual
/// consisting of all g with pairing(g, chi) = 0 for every chi in d.
Subgroup annihilator(const Subgroup& d);

/// Windowed audit of the annihilator rule table.  Checks that every windowed
/// point of annihilator(d) pairs to zero with every windowed point of d, and
/// that every other windowed predual point is separated by some windowed
/// character of d (searching growing character windows up to 16*B).
struct PointwiseAuditReport {
  bool holds = false;
  bool witness_search_exhausted = false;
  std::string detail;  // first offending pair / unseparated point, if any
};
PointwiseAuditReport verify_annihilator_pointwise(const Subgroup& d, const BigInt& bound);

}  // namespace tseq
