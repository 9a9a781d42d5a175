#include <doctest.h>

#include <random>

#include "tseq/element.hpp"

using namespace tseq;

TEST_CASE("circle values are canonical reduced representatives") {
  CHECK(CircleRational(1, 3) + CircleRational(1, 3) == CircleRational(2, 3));
  CHECK((CircleRational(1, 2) + CircleRational(1, 2)).is_zero());
  CHECK(CircleRational(2, 9) + CircleRational(2, 3) == CircleRational(8, 9));
  CHECK(CircleRational(2, 4) == CircleRational(1, 2));
  CHECK(CircleRational(-1, 3) == CircleRational(2, 3));
  CHECK(CircleRational(7, 3) == CircleRational(1, 3));
  CHECK(CircleRational(2, -4) == CircleRational(1, 2));
  CHECK(CircleRational(6, 3).is_zero());
  CHECK(CircleRational(0, 7).str() == "0");
  CHECK(CircleRational(3, 9).str() == "1/3");
}

TEST_CASE("circle scaling and norm") {
  CHECK(CircleRational(1, 3).scaled(5) == CircleRational(2, 3));
  CHECK(CircleRational(1, 8).scaled(-3) == CircleRational(5, 8));
  CHECK(CircleRational(1, 8).scaled(8).is_zero());
  CHECK(circ_norm(CircleRational()) == 0);
  CHECK(circ_norm(CircleRational(3, 4)) == Rational(1, 4));
  CHECK(circ_norm(CircleRational(1, 2)) == Rational(1, 2));
  CHECK(circ_norm(CircleRational(1, 5)) == Rational(1, 5));
  CHECK(circ_norm(CircleRational(4, 5)) == Rational(1, 5));
}

TEST_CASE("repeated addition stays canonical and matches scaling") {
  CircleRational step(1, 3), acc;
  for (int i = 0; i < 10000; ++i) acc = acc + step;
  CHECK(acc == step.scaled(10000));
  CHECK(acc == CircleRational(1, 3));

  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
  for (int i = 0; i < 10000; ++i) {
    CircleRational x(num(rng), den(rng));
    CHECK(x.denominator() >= 1);
    CHECK(x.numerator() >= 0);
    CHECK(x.numerator() < x.denominator());
    CHECK(gcd(x.numerator(), x.denominator()) == 1);
    CHECK((x + (-x)).is_zero());
    CHECK(circ_norm(x) == circ_norm(-x));
    Rational lift = x.lift();
    CHECK(lift >= 0);
    CHECK(lift < 1);
  }
}

TEST_CASE("guarded powers") {
  CHECK(pow_checked(BigInt(2), 10) == 1024);
  CHECK(pow_checked(BigInt(3), 0) == 1);
  CHECK(pow_checked(BigInt(0), 5) == 0);
  CHECK(pow_checked(BigInt(-1), 9) == -1);
  CHECK(pow_checked(BigInt(1), 1'000'000'000UL) == 1);

  std::uint64_t saved = ExponentGuard::max_bits();
  ExponentGuard::set_max_bits(64);
  CHECK_THROWS_AS(pow_checked(BigInt(2), 100), ExponentTooLarge);
  CHECK(pow_checked(BigInt(2), 20) == 1048576);
  ExponentGuard::set_max_bits(saved);
  CHECK(ExponentGuard::max_bits() == saved);
}

TEST_CASE("valuation, divisibility, smooth/rough splitting") {
  CHECK(valuation(BigInt(24), BigInt(2)) == 3);
  CHECK(valuation(BigInt(24), BigInt(3)) == 1);
  CHECK(valuation(BigInt(7), BigInt(2)) == 0);
  CHECK(divides(BigInt(3), BigInt(12)));
  CHECK(!divides(BigInt(5), BigInt(12)));
  CHECK(divides(BigInt(-4), BigInt(12)));

  SmoothSplit s = smooth_split(BigInt(40), BigInt(2));
  CHECK(s.smooth == 8);
  CHECK(s.rough == 5);
  s = smooth_split(BigInt(24), BigInt(6));
  CHECK(s.smooth == 24);
  CHECK(s.rough == 1);
  s = smooth_split(BigInt(1), BigInt(3));
  CHECK(s.smooth == 1);
  CHECK(s.rough == 1);

  CHECK(smooth_log(BigInt(27), BigInt(3)) == 3);
  CHECK(smooth_log(BigInt(12), BigInt(6)) == 2);
  CHECK(smooth_log(BigInt(1), BigInt(5)) == 0);
  CHECK_THROWS_AS(smooth_log(BigInt(10), BigInt(3)), Error);

  CHECK(multiplicative_order(BigInt(3), BigInt(5)) == 4);
  CHECK(multiplicative_order(BigInt(2), BigInt(7)) == 3);
  CHECK(multiplicative_order(BigInt(10), BigInt(7)) == 6);
  CHECK(multiplicative_order(BigInt(4), BigInt(1)) == 1);
}

TEST_CASE("truncated p-adic residues") {
  TruncatedPAdic z(2, 5, BigInt(35));
  CHECK(z.residue() == 3);  // 35 mod 32
  CHECK(z.residue_mod(3) == 3);
  CHECK(z.residue_mod(5) == 3);
  CHECK_THROWS_AS(z.residue_mod(6), PrecisionExhausted);
  CHECK(z.str() == "3+O(2^5)");

  TruncatedPAdic w(2, 3, BigInt(6));
  TruncatedPAdic sum = z + w;
  CHECK(sum.precision() == 3);  // precision shrinks to the weaker operand
  CHECK(sum.residue() == 1);    // 3 + 6 = 9 = 1 mod 8
  CHECK((-w).residue() == 2);
  CHECK(w.scaled(BigInt(5)).residue() == 6);  // 30 mod 8
}

TEST_CASE("pairing against catalogued examples") {
  // Z against T: n * x.
  CHECK(pairing(Element::integer(5), Element::circle(CircleRational(1, 3))) ==
        CircleRational(2, 3));
  CHECK(pairing(Element::integer(-1), Element::circle(CircleRational(1, 4))) ==
        CircleRational(3, 4));

  // Z(p)+Z against Z(p)+T: w*v/p + n*x.
  Element g = Element::split_group(3, 1, BigInt(2));
  Element chi = Element::split_dual(3, 2, CircleRational(1, 9));
  CHECK(pairing(g, chi) == CircleRational(8, 9));

  // Z(p^inf) against Z_p: multiply by the residue at the needed depth.
  Element x = Element::prufer(2, CircleRational(1, 8));
  CHECK(pairing(x, Element::padic_int(2, BigInt(3))) == CircleRational(3, 8));
  CHECK(pairing(x, Element::padic(TruncatedPAdic(2, 3, BigInt(3)))) == CircleRational(3, 8));
  CHECK_THROWS_AS(pairing(Element::prufer(2, CircleRational(1, 16)),
                          Element::padic(TruncatedPAdic(2, 3, BigInt(3)))),
                  PrecisionExhausted);

  // Pairing is symmetric in which side hosts the character.
  CHECK(pairing(Element::padic_int(2, BigInt(3)), x) == CircleRational(3, 8));

  CHECK_THROWS_AS(pairing(Element::integer(1), Element::integer(1)), MismatchedAmbient);
  CHECK_THROWS_AS(pairing(Element::integer(1), Element::prufer(2, CircleRational(1, 2))),
                  MismatchedAmbient);
}

namespace {

Element random_element(const Ambient& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> small(-40, 40), den_pow(0, 5), torsion(0, 100);
  switch (a.kind) {
    case Ambient::Kind::Z:
      return Element::integer(BigInt(small(rng)));
    case Ambient::Kind::Circle:
      return Element::circle(CircleRational(small(rng), 1 + std::abs(small(rng))));
    case Ambient::Kind::Prufer:
      return Element::prufer(a.p, CircleRational(small(rng), pow_checked(BigInt(a.p),
                                                                         den_pow(rng))));
    case Ambient::Kind::SplitGroup:
      return Element::split_group(a.p, torsion(rng) % a.p, BigInt(small(rng)));
    case Ambient::Kind::SplitDual:
      return Element::split_dual(a.p, torsion(rng) % a.p,
                                 CircleRational(small(rng), 1 + std::abs(small(rng))));
    case Ambient::Kind::PAdic:
      return Element::padic_int(a.p, BigInt(small(rng)));
  }
  return Element::integer(0);
}

}  // namespace

TEST_CASE("pairing is bilinear across all three dualities") {
  std::mt19937_64 rng(2024);
  const Ambient groups[] = {Ambient::integers(), Ambient::split_group(3), Ambient::prufer(2)};
  for (const Ambient& g_amb : groups) {
    Ambient chi_amb = g_amb.dual();
    for (int i = 0; i < 3000; ++i) {
      Element g1 = random_element(g_amb, rng), g2 = random_element(g_amb, rng);
      Element c1 = random_element(chi_amb, rng), c2 = random_element(chi_amb, rng);
      CHECK(pairing(g1 + g2, c1) == pairing(g1, c1) + pairing(g2, c1));
      CHECK(pairing(g1, c1 + c2) == pairing(g1, c1) + pairing(g1, c2));
      CHECK(pairing(-g1, c1) == -pairing(g1, c1));
      CHECK(pairing(g1.scaled(BigInt(7)), c1) == pairing(g1, c1).scaled(7));
    }
  }
}

TEST_CASE("element gaps separate exactly") {
  CHECK(element_gap(Element::integer(5), Element::integer(3)) == 2);
  CHECK(element_gap(Element::integer(-5), Element::integer(3)) == 8);
  CHECK(element_gap(Element::split_group(3, 1, BigInt(2)), Element::split_group(3, 1, BigInt(2))) ==
        0);
  CHECK(element_gap(Element::split_group(3, 1, BigInt(2)), Element::split_group(3, 1, BigInt(5))) ==
        3);
  // Differing torsion separates even with equal free parts.
  CHECK(element_gap(Element::split_group(3, 1, BigInt(2)),
                    Element::split_group(3, 2, BigInt(2))) > 0);
  CHECK(element_gap(Element::prufer(2, CircleRational(1, 4)),
                    Element::prufer(2, CircleRational(1, 2))) == Rational(1, 4));
  CHECK(element_gap(Element::circle(CircleRational(1, 2)),
                    Element::circle(CircleRational(1, 3))) == Rational(1, 6));
  // Truncated p-adics carry a precision budget, not a translation distance.
  CHECK_THROWS_AS(element_gap(Element::padic_int(2, BigInt(1)), Element::padic_int(2, BigInt(3))),
                  UnsupportedAmbient);
}

TEST_CASE("element text round-trips") {
  const Ambient z = Ambient::integers();
  for (const char* text : {"0", "5", "-12"})
    CHECK(Element::parse(text, z).str() == text);

  const Ambient sg = Ambient::split_group(3);
  for (const char* text : {"e+5", "2*e-3", "e", "7", "2*e"})
    CHECK(Element::parse(text, sg).str() == text);

  const Ambient sd = Ambient::split_dual(3);
  for (const char* text : {"(1, 2/9)", "(0, 1/2)", "(2, 0)"})
    CHECK(Element::parse(text, sd).str() == text);

  const Ambient pa = Ambient::padic(2);
  CHECK(Element::parse("7+O(2^5)", pa).str() == "7+O(2^5)");
  CHECK(Element::parse("7", pa).str() == "7");

  const Ambient pr = Ambient::prufer(2);
  CHECK(Element::parse("3/8", pr).str() == "3/8");
  CHECK_THROWS_AS(Element::parse("1/3", pr), Error);  // denominator not a 2-power
  CHECK_THROWS_AS(Element::parse("x", z), ParseError);
  CHECK_THROWS_AS(Element::parse("1/2", z), ParseError);
}

TEST_CASE("scaled split torsion wraps modulo p") {
  Element g = Element::split_group(3, 2, BigInt(1));
  Element doubled = g.scaled(BigInt(2));
  CHECK(doubled == Element::split_group(3, 1, BigInt(2)));
  CHECK(g + g == doubled);
  CHECK((g.scaled(BigInt(3))) == Element::split_group(3, 0, BigInt(3)));
}
