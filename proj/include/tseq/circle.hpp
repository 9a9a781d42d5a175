#pragma once

#include <string>

#include "tseq/bigint.hpp"

namespace tseq {

/// Exact element of the circle group Q/Z, stored as the unique reduced
/// representative num/den with 0 <= num < den.  Every operation returns a
/// value already in that canonical form.
class CircleRational {
 public:
  CircleRational() : num_(0), den_(1) {}
  /// Reduces numerator/denominator mod 1.  denominator must be nonzero.
  CircleRational(BigInt numerator, BigInt denominator);

  static CircleRational from_rational(const Rational& q);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  CircleRational operator+(const CircleRational& o) const;
  CircleRational operator-() const;
  CircleRational operator-(const CircleRational& o) const;
  /// n * x in Q/Z.
  CircleRational scaled(const BigInt& n) const;

  /// Distance to 0 on the circle: min(x, 1-x) as an exact rational in [0, 1/2].
  Rational norm() const;

  /// The representative in [0, 1).
  Rational lift() const;

  bool operator==(const CircleRational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const CircleRational& o) const { return !(*this == o); }
  bool operator<(const CircleRational& o) const;

  /// "0" or "a/b".
  std::string str() const;
  /// Accepts "a/b" or an integer (which is 0 mod 1).
  static CircleRational parse(const std::string& text);

 private:
  BigInt num_;
  BigInt den_;
};

inline CircleRational circ_add(const CircleRational& a, const CircleRational& b) {
  return a + b;
}
inline CircleRational circ_scale(const BigInt& n, const CircleRational& x) {
  return x.scaled(n);
}
inline Rational circ_norm(const CircleRational& x) { return x.norm(); }

}  // namespace tseq
