#include "tseq/circle.hpp"

namespace tseq {

namespace {

// Canonicalize a/b to the reduced representative in [0, 1).
void reduce_mod_one(BigInt& a, BigInt& b) {
  if (b == 0) throw Error("circle element with zero denominator");
  if (b < 0) {
    a = -a;
    b = -b;
  }
  BigInt g = gcd(a, b);
  if (g > 1) {
    a /= g;
    b /= g;
  }
  mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (a == 0) b = 1;
}

}  // namespace

CircleRational::CircleRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  reduce_mod_one(num_, den_);
}

CircleRational CircleRational::from_rational(const Rational& q) {
  return CircleRational(q.get_num(), q.get_den());
}

CircleRational CircleRational::operator+(const CircleRational& o) const {
  return CircleRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

CircleRational CircleRational::operator-() const {
  return CircleRational(-num_, den_);
}

CircleRational CircleRational::operator-(const CircleRational& o) const {
  return *this + (-o);
}

CircleRational CircleRational::scaled(const BigInt& n) const {
  return CircleRational(n * num_, den_);
}

Rational CircleRational::norm() const {
  Rational x(num_, den_);
  x.canonicalize();
  Rational other = 1 - x;
  return x <= other ? x : other;
}

Rational CircleRational::lift() const {
  Rational x(num_, den_);
  x.canonicalize();
  return x;
}

bool CircleRational::operator<(const CircleRational& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

std::string CircleRational::str() const {
  if (num_ == 0) return "0";
  return num_.get_str() + "/" + den_.get_str();
}

CircleRational CircleRational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return CircleRational(BigInt(text), 1);
    return CircleRational(BigInt(text.substr(0, slash)),
                          BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ParseError("not a circle rational: '" + text + "'");
  }
}

}  // namespace tseq
