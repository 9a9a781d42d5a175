#include "tseq/element.hpp"

#include <tuple>

namespace tseq {

namespace {

unsigned reduce_torsion(long w, unsigned p) {
  long r = w % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return static_cast<unsigned>(r);
}

void require_prime_power_denominator(const CircleRational& x, unsigned p) {
  const BigInt& den = x.denominator();
  if (den == 1) return;
  // Denominators reach p^(n^3); strip all p factors in one call rather than
  // one at a time.
  BigInt rest;
  mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), BigInt(p).get_mpz_t());
  if (rest != 1)
    throw Error("denominator " + den.get_str() + " is not a power of " + std::to_string(p));
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out += c;
  return out;
}

BigInt parse_int(const std::string& s) {
  try {
    return BigInt(s);
  } catch (const std::invalid_argument&) {
    throw ParseError("not an integer: '" + s + "'");
  }
}

}  // namespace

Ambient Ambient::dual() const {
  switch (kind) {
    case Kind::Z: return circle();
    case Kind::Circle: return integers();
    case Kind::Prufer: return padic(p);
    case Kind::PAdic: return prufer(p);
    case Kind::SplitGroup: return split_dual(p);
    case Kind::SplitDual: return split_group(p);
  }
  throw Error("corrupt ambient");
}

std::string Ambient::str() const {
  switch (kind) {
    case Kind::Z: return "Z";
    case Kind::Circle: return "T";
    case Kind::Prufer: return "Z(" + std::to_string(p) + "^inf)";
    case Kind::PAdic: return "Zp(" + std::to_string(p) + ")";
    case Kind::SplitGroup: return "Z(" + std::to_string(p) + ")+Z";
    case Kind::SplitDual: return "Z(" + std::to_string(p) + ")+T";
  }
  throw Error("corrupt ambient");
}

Element Element::integer(BigInt n) {
  return Element(Ambient::integers(), Payload(std::move(n)));
}

Element Element::circle(CircleRational x) {
  return Element(Ambient::circle(), Payload(std::move(x)));
}

Element Element::prufer(unsigned p, CircleRational x) {
  require_prime_power_denominator(x, p);
  return Element(Ambient::prufer(p), Payload(std::move(x)));
}

Element Element::split_group(unsigned p, long torsion, BigInt free_part) {
  return Element(Ambient::split_group(p),
                 Payload(SplitInt{reduce_torsion(torsion, p), std::move(free_part)}));
}

Element Element::split_dual(unsigned p, long torsion, CircleRational x) {
  return Element(Ambient::split_dual(p),
                 Payload(SplitCirc{reduce_torsion(torsion, p), std::move(x)}));
}

Element Element::padic_int(unsigned p, BigInt z) {
  return Element(Ambient::padic(p), Payload(std::move(z)));
}

Element Element::padic(TruncatedPAdic z) {
  Ambient a = Ambient::padic(z.prime());
  return Element(a, Payload(std::move(z)));
}

Element Element::zero(const Ambient& a) {
  switch (a.kind) {
    case Ambient::Kind::Z: return integer(0);
    case Ambient::Kind::Circle: return circle(CircleRational());
    case Ambient::Kind::Prufer: return prufer(a.p, CircleRational());
    case Ambient::Kind::SplitGroup: return split_group(a.p, 0, 0);
    case Ambient::Kind::SplitDual: return split_dual(a.p, 0, CircleRational());
    case Ambient::Kind::PAdic: return padic_int(a.p, 0);
  }
  throw Error("corrupt ambient");
}

bool Element::is_zero() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BigInt>) return v == 0;
        else if constexpr (std::is_same_v<T, CircleRational>) return v.is_zero();
        else if constexpr (std::is_same_v<T, SplitInt>) return v.torsion == 0 && v.free_part == 0;
        else if constexpr (std::is_same_v<T, SplitCirc>) return v.torsion == 0 && v.circ.is_zero();
        else return v.is_zero();
      },
      value_);
}

const BigInt& Element::int_value() const {
  if (const BigInt* v = std::get_if<BigInt>(&value_)) return *v;
  throw Error("element of " + ambient_.str() + " has no exact integer payload");
}

const CircleRational& Element::circle_value() const {
  if (const CircleRational* v = std::get_if<CircleRational>(&value_)) return *v;
  if (const SplitCirc* v = std::get_if<SplitCirc>(&value_)) return v->circ;
  throw Error("element of " + ambient_.str() + " has no circle payload");
}

unsigned Element::torsion() const {
  if (const SplitInt* v = std::get_if<SplitInt>(&value_)) return v->torsion;
  if (const SplitCirc* v = std::get_if<SplitCirc>(&value_)) return v->torsion;
  throw Error("element of " + ambient_.str() + " has no torsion coordinate");
}

const BigInt& Element::free_part() const {
  if (const SplitInt* v = std::get_if<SplitInt>(&value_)) return v->free_part;
  throw Error("element of " + ambient_.str() + " has no free coordinate");
}

bool Element::padic_exact() const {
  if (ambient_.kind != Ambient::Kind::PAdic)
    throw Error("element of " + ambient_.str() + " is not p-adic");
  return std::holds_alternative<BigInt>(value_);
}

const TruncatedPAdic& Element::padic_value() const {
  if (const TruncatedPAdic* v = std::get_if<TruncatedPAdic>(&value_)) return *v;
  throw Error("p-adic element is exact, not truncated");
}

Element Element::operator+(const Element& o) const {
  if (!(ambient_ == o.ambient_))
    throw MismatchedAmbient("adding elements of " + ambient_.str() + " and " + o.ambient_.str());
  switch (ambient_.kind) {
    case Ambient::Kind::Z:
      return integer(int_value() + o.int_value());
    case Ambient::Kind::Circle:
      return circle(circle_value() + o.circle_value());
    case Ambient::Kind::Prufer:
      return prufer(ambient_.p, circle_value() + o.circle_value());
    case Ambient::Kind::SplitGroup:
      return split_group(ambient_.p, static_cast<long>(torsion()) + static_cast<long>(o.torsion()),
                         free_part() + o.free_part());
    case Ambient::Kind::SplitDual:
      return split_dual(ambient_.p, static_cast<long>(torsion()) + static_cast<long>(o.torsion()),
                        circle_value() + o.circle_value());
    case Ambient::Kind::PAdic: {
      if (padic_exact() && o.padic_exact()) return padic_int(ambient_.p, int_value() + o.int_value());
      // An exact integer has every digit available, so it never lowers
      // the precision of the truncated side.
      if (padic_exact()) return padic(o.padic_value() + TruncatedPAdic(ambient_.p, o.padic_value().precision(), int_value()));
      if (o.padic_exact()) return padic(padic_value() + TruncatedPAdic(ambient_.p, padic_value().precision(), o.int_value()));
      return padic(padic_value() + o.padic_value());
    }
  }
  throw Error("corrupt ambient");
}

Element Element::operator-() const {
  switch (ambient_.kind) {
    case Ambient::Kind::Z: return integer(-int_value());
    case Ambient::Kind::Circle: return circle(-circle_value());
    case Ambient::Kind::Prufer: return prufer(ambient_.p, -circle_value());
    case Ambient::Kind::SplitGroup:
      return split_group(ambient_.p, -static_cast<long>(torsion()), -free_part());
    case Ambient::Kind::SplitDual:
      return split_dual(ambient_.p, -static_cast<long>(torsion()), -circle_value());
    case Ambient::Kind::PAdic:
      if (padic_exact()) return padic_int(ambient_.p, -int_value());
      return padic(-padic_value());
  }
  throw Error("corrupt ambient");
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::scaled(const BigInt& n) const {
  switch (ambient_.kind) {
    case Ambient::Kind::Z: return integer(n * int_value());
    case Ambient::Kind::Circle: return circle(circle_value().scaled(n));
    case Ambient::Kind::Prufer: return prufer(ambient_.p, circle_value().scaled(n));
    case Ambient::Kind::SplitGroup: {
      BigInt w = (n * torsion()) % ambient_.p;
      return split_group(ambient_.p, w.get_si(), n * free_part());
    }
    case Ambient::Kind::SplitDual: {
      BigInt w = (n * torsion()) % ambient_.p;
      return split_dual(ambient_.p, w.get_si(), circle_value().scaled(n));
    }
    case Ambient::Kind::PAdic:
      if (padic_exact()) return padic_int(ambient_.p, n * int_value());
      return padic(padic_value().scaled(n));
  }
  throw Error("corrupt ambient");
}

bool Element::operator==(const Element& o) const {
  return ambient_ == o.ambient_ && value_ == o.value_;
}

bool Element::operator<(const Element& o) const {
  auto key = [](const Element& e) {
    return std::make_tuple(static_cast<int>(e.ambient_.kind), e.ambient_.p);
  };
  if (key(*this) != key(o)) return key(*this) < key(o);
  switch (ambient_.kind) {
    case Ambient::Kind::Z:
      return int_value() < o.int_value();
    case Ambient::Kind::Circle:
    case Ambient::Kind::Prufer:
      return circle_value() < o.circle_value();
    case Ambient::Kind::SplitGroup:
      return std::make_tuple(torsion(), free_part()) <
             std::make_tuple(o.torsion(), o.free_part());
    case Ambient::Kind::SplitDual:
      if (torsion() != o.torsion()) return torsion() < o.torsion();
      return circle_value() < o.circle_value();
    case Ambient::Kind::PAdic: {
      if (padic_exact() != o.padic_exact()) return padic_exact();
      if (padic_exact()) return int_value() < o.int_value();
      const auto& a = padic_value();
      const auto& b = o.padic_value();
      return std::make_tuple(a.precision(), a.residue()) <
             std::make_tuple(b.precision(), b.residue());
    }
  }
  throw Error("corrupt ambient");
}

std::string Element::str() const {
  switch (ambient_.kind) {
    case Ambient::Kind::Z:
      return int_value().get_str();
    case Ambient::Kind::Circle:
    case Ambient::Kind::Prufer:
      return circle_value().str();
    case Ambient::Kind::SplitGroup: {
      const BigInt& b = free_part();
      unsigned w = torsion();
      if (w == 0) return b.get_str();
      std::string head = (w == 1) ? "e" : std::to_string(w) + "*e";
      if (b == 0) return head;
      return head + (b > 0 ? "+" : "") + b.get_str();
    }
    case Ambient::Kind::SplitDual:
      return "(" + std::to_string(torsion()) + ", " + circle_value().str() + ")";
    case Ambient::Kind::PAdic:
      if (padic_exact()) return int_value().get_str();
      return padic_value().str();
  }
  throw Error("corrupt ambient");
}

Element Element::parse(const std::string& raw, const Ambient& a) {
  std::string text = strip_spaces(raw);
  if (text.empty()) throw ParseError("empty element text");
  switch (a.kind) {
    case Ambient::Kind::Z:
      return integer(parse_int(text));
    case Ambient::Kind::Circle:
      return circle(CircleRational::parse(text));
    case Ambient::Kind::Prufer:
      try {
        return prufer(a.p, CircleRational::parse(text));
      } catch (const Error& e) {
        throw ParseError(std::string(e.what()));
      }
    case Ambient::Kind::SplitGroup: {
      auto epos = text.find('e');
      if (epos == std::string::npos) return split_group(a.p, 0, parse_int(text));
      std::string head = text.substr(0, epos);
      std::string tail = text.substr(epos + 1);
      long w = 1;
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError("expected '<w>*e' in '" + raw + "'");
        std::string num = head.substr(0, head.size() - 1);
        if (num.empty()) throw ParseError("missing torsion coefficient in '" + raw + "'");
        try {
          w = std::stol(num);
        } catch (const std::exception&) {
          throw ParseError("bad torsion coefficient in '" + raw + "'");
        }
      }
      BigInt b = 0;
      if (!tail.empty()) {
        if (tail[0] != '+' && tail[0] != '-')
          throw ParseError("expected sign after 'e' in '" + raw + "'");
        b = parse_int(tail[0] == '+' ? tail.substr(1) : tail);
      }
      return split_group(a.p, w, b);
    }
    case Ambient::Kind::SplitDual: {
      if (text.size() < 5 || text.front() != '(' || text.back() != ')')
        throw ParseError("expected '(w, a/b)', got '" + raw + "'");
      std::string inner = text.substr(1, text.size() - 2);
      auto comma = inner.find(',');
      if (comma == std::string::npos) throw ParseError("expected '(w, a/b)', got '" + raw + "'");
      long w = 0;
      try {
        w = std::stol(inner.substr(0, comma));
      } catch (const std::exception&) {
        throw ParseError("bad torsion coordinate in '" + raw + "'");
      }
      return split_dual(a.p, w, CircleRational::parse(inner.substr(comma + 1)));
    }
    case Ambient::Kind::PAdic: {
      auto opos = text.find("+O(");
      if (opos == std::string::npos) return padic_int(a.p, parse_int(text));
      if (text.back() != ')') throw ParseError("expected 'r+O(p^N)', got '" + raw + "'");
      std::string r = text.substr(0, opos);
      std::string po = text.substr(opos + 3, text.size() - opos - 4);
      auto caret = po.find('^');
      if (caret == std::string::npos) throw ParseError("expected 'r+O(p^N)', got '" + raw + "'");
      unsigned long pp = 0, nn = 0;
      try {
        pp = std::stoul(po.substr(0, caret));
        nn = std::stoul(po.substr(caret + 1));
      } catch (const std::exception&) {
        throw ParseError("bad precision tag in '" + raw + "'");
      }
      if (pp != a.p) throw ParseError("p-adic prime mismatch in '" + raw + "'");
      return padic(TruncatedPAdic(a.p, static_cast<unsigned>(nn), parse_int(r)));
    }
  }
  throw Error("corrupt ambient");
}

Rational element_gap(const Element& x, const Element& y) {
  if (!(x.ambient() == y.ambient()))
    throw MismatchedAmbient("gap between elements of " + x.ambient().str() + " and " +
                            y.ambient().str());
  switch (x.ambient().kind) {
    case Ambient::Kind::Z: {
      Rational d(x.int_value() - y.int_value());
      return d < 0 ? Rational(-d) : d;
    }
    case Ambient::Kind::Circle:
    case Ambient::Kind::Prufer:
      return (x.circle_value() - y.circle_value()).norm();
    case Ambient::Kind::SplitGroup: {
      unsigned p = x.ambient().p;
      CircleRational torsion_diff(BigInt(x.torsion()) - BigInt(y.torsion()), BigInt(p));
      Rational free_diff(x.free_part() - y.free_part());
      if (free_diff < 0) free_diff = -free_diff;
      return torsion_diff.norm() + free_diff;
    }
    default:
      throw UnsupportedAmbient("no gap metric on " + x.ambient().str());
  }
}

CircleRational pairing(const Element& g, const Element& chi) {
  if (!(chi.ambient() == g.ambient().dual()))
    throw MismatchedAmbient("character lives in " + chi.ambient().str() +
                            " but the dual of " + g.ambient().str() + " is " +
                            g.ambient().dual().str());
  switch (g.ambient().kind) {
    case Ambient::Kind::Z:
      // (n, x) -> n*x.
      return chi.circle_value().scaled(g.int_value());
    case Ambient::Kind::Circle:
      return g.circle_value().scaled(chi.int_value());
    case Ambient::Kind::SplitGroup: {
      // ((w, n), (v, x)) -> w*v/p + n*x.
      unsigned p = g.ambient().p;
      CircleRational torsion_part(BigInt(g.torsion()) * BigInt(chi.torsion()), BigInt(p));
      return torsion_part + chi.circle_value().scaled(g.free_part());
    }
    case Ambient::Kind::SplitDual: {
      unsigned p = g.ambient().p;
      CircleRational torsion_part(BigInt(g.torsion()) * BigInt(chi.torsion()), BigInt(p));
      return torsion_part + g.circle_value().scaled(chi.free_part());
    }
    case Ambient::Kind::Prufer: {
      // (a/p^k, z) -> a * (z mod p^k) / p^k; only the first k digits of z matter.
      const CircleRational& x = g.circle_value();
      if (chi.padic_exact()) return x.scaled(chi.int_value());
      unsigned p = g.ambient().p;
      unsigned k = x.denominator() == 1
                       ? 0
                       : static_cast<unsigned>(valuation(x.denominator(), BigInt(p)));
      return x.scaled(chi.padic_value().residue_mod(k));
    }
    case Ambient::Kind::PAdic:
      return pairing(chi, g);
  }
  throw Error("corrupt ambient");
}

}  // namespace tseq
