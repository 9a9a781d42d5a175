#pragma once

#include <string>
#include <variant>

#include "tseq/circle.hpp"
#include "tseq/padic.hpp"

namespace tseq {

/// The ambient groups handled by the library, together with the duality
///
///   Z            <->  Circle  (= Q/Z, written T)
///   SplitGroup p <->  SplitDual p   (Z(p) + Z  <->  Z(p) + T)
///   Prufer p     <->  PAdic p       (Z(p^inf)  <->  Z_p)
///
/// Characters are represented by elements of the dual ambient; the exact
/// value of a character at a group element is given by pairing() below.
struct Ambient {
  enum class Kind { Z, Circle, Prufer, SplitGroup, SplitDual, PAdic };

  Kind kind = Kind::Z;
  unsigned p = 0;  // parametrising prime; 0 for Z and Circle

  static Ambient integers() { return {Kind::Z, 0}; }
  static Ambient circle() { return {Kind::Circle, 0}; }
  static Ambient prufer(unsigned p) { return {Kind::Prufer, p}; }
  static Ambient split_group(unsigned p) { return {Kind::SplitGroup, p}; }
  static Ambient split_dual(unsigned p) { return {Kind::SplitDual, p}; }
  static Ambient padic(unsigned p) { return {Kind::PAdic, p}; }

  /// The ambient hosting the characters of this one (an involution).
  Ambient dual() const;
  bool operator==(const Ambient&) const = default;
  std::string str() const;
};

/// One exact element of an ambient group.  Value type; immutable.
class Element {
 public:
  struct SplitInt {          // element of Z(p) + Z
    unsigned torsion;        // in [0, p)
    BigInt free_part;
    bool operator==(const SplitInt&) const = default;
  };
  struct SplitCirc {         // element of Z(p) + T
    unsigned torsion;        // in [0, p)
    CircleRational circ;
    bool operator==(const SplitCirc&) const = default;
  };

  static Element integer(BigInt n);
  static Element circle(CircleRational x);
  /// x must have a p-power denominator.
  static Element prufer(unsigned p, CircleRational x);
  static Element split_group(unsigned p, long torsion, BigInt free_part);
  static Element split_dual(unsigned p, long torsion, CircleRational x);
  /// Exact integer viewed inside Z_p.
  static Element padic_int(unsigned p, BigInt z);
  static Element padic(TruncatedPAdic z);
  static Element zero(const Ambient& a);

  const Ambient& ambient() const { return ambient_; }
  bool is_zero() const;

  // Checked payload accessors.
  const BigInt& int_value() const;           // Z; PAdic when exact
  const CircleRational& circle_value() const;  // Circle, Prufer, SplitDual
  unsigned torsion() const;                  // SplitGroup / SplitDual
  const BigInt& free_part() const;           // SplitGroup
  bool padic_exact() const;                  // PAdic: exact integer or truncated?
  const TruncatedPAdic& padic_value() const;  // PAdic when truncated

  Element operator+(const Element& o) const;
  Element operator-() const;
  Element operator-(const Element& o) const;
  Element scaled(const BigInt& n) const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  /// Total order (ambient, then value); used for canonical point sets.
  bool operator<(const Element& o) const;

  /// Canonical text.  Z: "-3"; Circle/Prufer: "a/b"; SplitGroup: "2*e+5";
  /// SplitDual: "(w, a/b)"; PAdic: "7" or "7+O(2^5)".
  std::string str() const;
  /// Parses the canonical text of an element of ambient a (grammar above;
  /// SplitGroup also accepts "e", "e-3", plain integers for torsion 0).
  static Element parse(const std::string& text, const Ambient& a);

 private:
  using Payload = std::variant<BigInt, CircleRational, SplitInt, SplitCirc, TruncatedPAdic>;
  Element(Ambient a, Payload v) : ambient_(a), value_(std::move(v)) {}

  Ambient ambient_;
  Payload value_;
};

/// Exact value in Q/Z of the character chi at the element g.  Requires
/// chi.ambient() == g.ambient().dual(); otherwise MismatchedAmbient.
/// A truncated p-adic character raises PrecisionExhausted when the digit
/// demand of g exceeds its precision.
CircleRational pairing(const Element& g, const Element& chi);

/// Exact distance between two elements of the same group-side ambient:
/// |x - y| on Z, circle distance on Z(p^inf), and (circle distance of the
/// torsion parts as p-th roots) + |free difference| on Z(p) + Z.  Zero iff
/// the elements are equal.
Rational element_gap(const Element& x, const Element& y);

}  // namespace tseq
