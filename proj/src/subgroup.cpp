#include "tseq/subgroup.hpp"

#include <algorithm>
#include <set>

namespace tseq {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

}  // namespace

Subgroup Subgroup::zero(const Ambient& a) {
  Subgroup d(a, Shape::Zero);
  d.normalize();
  return d;
}

Subgroup Subgroup::whole(const Ambient& a) {
  Subgroup d(a, Shape::Whole);
  d.normalize();
  return d;
}

Subgroup Subgroup::multiples_of(const Ambient& a, BigInt q) {
  require(a.kind == Ambient::Kind::Z || a.kind == Ambient::Kind::PAdic,
          "integer-multiples descriptor needs Z or Z_p, got " + a.str());
  require(q >= 1, "multiples-of descriptor needs q >= 1");
  Subgroup d(a, Shape::MultiplesOfQ);
  d.q_ = std::move(q);
  d.normalize();
  return d;
}

Subgroup Subgroup::cyclic_in_circle(BigInt q) {
  require(q >= 1, "cyclic descriptor needs q >= 1");
  Subgroup d(Ambient::circle(), Shape::CyclicInCircle);
  d.q_ = std::move(q);
  d.normalize();
  return d;
}

Subgroup Subgroup::prufer_in_circle(unsigned p) {
  require(p >= 2, "Prufer descriptor needs p >= 2");
  Subgroup d(Ambient::circle(), Shape::PruferInCircle);
  d.q_ = p;
  return d;
}

Subgroup Subgroup::finite_cyclic_prufer(unsigned p, unsigned c) {
  require(p >= 2, "finite cycle needs p >= 2");
  Subgroup d(Ambient::prufer(p), Shape::FiniteCyclicPrufer);
  d.exp_ = c;
  d.normalize();
  return d;
}

Subgroup Subgroup::padic_ball(unsigned p, unsigned v) {
  require(p >= 2, "p-adic ball needs p >= 2");
  Subgroup d(Ambient::padic(p), Shape::PAdicBall);
  d.exp_ = v;
  d.normalize();
  return d;
}

Subgroup Subgroup::split_product(const Ambient& a, TorsionPart torsion, Subgroup second) {
  require(a.kind == Ambient::Kind::SplitGroup || a.kind == Ambient::Kind::SplitDual,
          "split product needs a split ambient, got " + a.str());
  Ambient expect = a.kind == Ambient::Kind::SplitGroup ? Ambient::integers() : Ambient::circle();
  require(second.ambient() == expect,
          "second factor of " + a.str() + " must live in " + expect.str());
  Subgroup d(a, Shape::SplitProduct);
  d.torsion_ = torsion;
  d.second_ = std::make_shared<Subgroup>(std::move(second));
  return d;
}

void Subgroup::normalize() {
  switch (shape_) {
    case Shape::MultiplesOfQ:
      if (q_ == 1) shape_ = Shape::Whole;
      break;
    case Shape::CyclicInCircle:
      if (q_ == 1) shape_ = Shape::Zero;
      break;
    case Shape::FiniteCyclicPrufer:
      if (exp_ == 0) shape_ = Shape::Zero;
      break;
    case Shape::PAdicBall:
      if (exp_ == 0) shape_ = Shape::Whole;
      break;
    case Shape::Zero:
    case Shape::Whole:
      // A split ambient's trivial/full subgroup is canonically a product.
      if (ambient_.kind == Ambient::Kind::SplitGroup || ambient_.kind == Ambient::Kind::SplitDual) {
        Ambient inner = ambient_.kind == Ambient::Kind::SplitGroup ? Ambient::integers()
                                                                   : Ambient::circle();
        bool full = shape_ == Shape::Whole;
        torsion_ = full ? TorsionPart::Whole : TorsionPart::Zero;
        second_ = std::make_shared<Subgroup>(full ? whole(inner) : zero(inner));
        shape_ = Shape::SplitProduct;
      }
      break;
    default:
      break;
  }
}

const BigInt& Subgroup::modulus() const {
  require(shape_ == Shape::MultiplesOfQ || shape_ == Shape::CyclicInCircle ||
              shape_ == Shape::PruferInCircle,
          "descriptor has no modulus");
  return q_;
}

unsigned Subgroup::exponent() const {
  require(shape_ == Shape::FiniteCyclicPrufer || shape_ == Shape::PAdicBall,
          "descriptor has no exponent");
  return exp_;
}

Subgroup::TorsionPart Subgroup::torsion_part() const {
  require(shape_ == Shape::SplitProduct, "descriptor has no torsion factor");
  return torsion_;
}

const Subgroup& Subgroup::second_factor() const {
  require(shape_ == Shape::SplitProduct, "descriptor has no second factor");
  return *second_;
}

bool Subgroup::operator==(const Subgroup& o) const {
  if (!(ambient_ == o.ambient_) || shape_ != o.shape_) return false;
  switch (shape_) {
    case Shape::Zero:
    case Shape::Whole:
      return true;
    case Shape::MultiplesOfQ:
    case Shape::CyclicInCircle:
    case Shape::PruferInCircle:
      return q_ == o.q_;
    case Shape::FiniteCyclicPrufer:
    case Shape::PAdicBall:
      return exp_ == o.exp_;
    case Shape::SplitProduct:
      return torsion_ == o.torsion_ && *second_ == *o.second_;
  }
  throw Error("corrupt descriptor");
}

std::string Subgroup::str() const {
  switch (shape_) {
    case Shape::Zero:
      return "0";
    case Shape::Whole:
      return ambient_.str();
    case Shape::MultiplesOfQ:
      return "qZ(" + q_.get_str() + ")";
    case Shape::CyclicInCircle:
      return "Z(" + q_.get_str() + ")";
    case Shape::PruferInCircle:
      return "Z(" + q_.get_str() + "^inf)";
    case Shape::FiniteCyclicPrufer:
      return "Z(" + std::to_string(ambient_.p) + "^" + std::to_string(exp_) + ")";
    case Shape::PAdicBall:
      return "p^" + std::to_string(exp_) + "*Zp(" + std::to_string(ambient_.p) + ")";
    case Shape::SplitProduct: {
      std::string left = torsion_ == TorsionPart::Zero
                             ? "0"
                             : "Z(" + std::to_string(ambient_.p) + ")";
      return left + "+" + second_->str();
    }
  }
  throw Error("corrupt descriptor");
}

Subgroup Subgroup::parse(const std::string& raw, const Ambient& a) {
  std::string text;
  for (char c : raw)
    if (c != ' ' && c != '\t') text += c;
  if (text.empty()) throw ParseError("empty descriptor text");

  auto bad = [&]() -> ParseError {
    return ParseError("cannot read '" + raw + "' as a subgroup of " + a.str());
  };

  if (a.kind == Ambient::Kind::SplitGroup || a.kind == Ambient::Kind::SplitDual) {
    // Split descriptors read as "<left>+<second>", where the second part may
    // itself contain '+' only in "Z(p^inf)" / never, so split on the first
    // '+' that follows the left token ("0" or "Z(p)").
    std::string left, right;
    if (text.rfind("0+", 0) == 0) {
      left = "0";
      right = text.substr(2);
    } else {
      std::string tag = "Z(" + std::to_string(a.p) + ")+";
      if (text.rfind(tag, 0) == 0) {
        left = "Z";
        right = text.substr(tag.size());
      } else {
        throw bad();
      }
    }
    Ambient inner = a.kind == Ambient::Kind::SplitGroup ? Ambient::integers() : Ambient::circle();
    return split_product(a, left == "0" ? TorsionPart::Zero : TorsionPart::Whole,
                         Subgroup::parse(right, inner));
  }

  if (text == "0") return zero(a);
  if (text == a.str()) return whole(a);

  switch (a.kind) {
    case Ambient::Kind::Z:
    case Ambient::Kind::PAdic:
      if (text.rfind("qZ(", 0) == 0 && text.back() == ')') {
        try {
          return multiples_of(a, BigInt(text.substr(3, text.size() - 4)));
        } catch (const std::invalid_argument&) {
          throw bad();
        }
      }
      if (a.kind == Ambient::Kind::PAdic && text.rfind("p^", 0) == 0) {
        auto star = text.find("*Zp(");
        if (star == std::string::npos || text.back() != ')') throw bad();
        try {
          unsigned v = static_cast<unsigned>(std::stoul(text.substr(2, star - 2)));
          unsigned p = static_cast<unsigned>(std::stoul(text.substr(star + 4, text.size() - star - 5)));
          if (p != a.p) throw bad();
          return padic_ball(p, v);
        } catch (const std::exception&) {
          throw bad();
        }
      }
      throw bad();
    case Ambient::Kind::Circle: {
      if (text.rfind("Z(", 0) != 0 || text.back() != ')') throw bad();
      std::string body = text.substr(2, text.size() - 3);
      auto caret = body.find('^');
      try {
        if (caret == std::string::npos) return cyclic_in_circle(BigInt(body));
        if (body.substr(caret + 1) != "inf") throw bad();
        return prufer_in_circle(static_cast<unsigned>(std::stoul(body.substr(0, caret))));
      } catch (const std::exception&) {
        throw bad();
      }
    }
    case Ambient::Kind::Prufer: {
      if (text.rfind("Z(", 0) != 0 || text.back() != ')') throw bad();
      std::string body = text.substr(2, text.size() - 3);
      auto caret = body.find('^');
      if (caret == std::string::npos) throw bad();
      try {
        unsigned p = static_cast<unsigned>(std::stoul(body.substr(0, caret)));
        if (p != a.p) throw bad();
        std::string e = body.substr(caret + 1);
        if (e == "inf") return whole(a);
        return finite_cyclic_prufer(p, static_cast<unsigned>(std::stoul(e)));
      } catch (const std::exception&) {
        throw bad();
      }
    }
    default:
      throw bad();
  }
}

// ---------------------------------------------------------------------------
// Windows.

namespace {

// Fractions with denominator exactly b (reduced), pushed through `emit`.
template <typename Emit>
void emit_reduced_fractions(const BigInt& b, Emit emit) {
  for (BigInt a = 1; a < b; ++a)
    if (gcd(a, b) == 1) emit(CircleRational(a, b));
}

// All reduced fractions a/b with 0 <= a < b <= B (plus 0), as circle points.
std::vector<CircleRational> circle_window(const BigInt& bound) {
  std::vector<CircleRational> out;
  out.emplace_back();
  for (BigInt b = 2; b <= bound; ++b)
    emit_reduced_fractions(b, [&](CircleRational x) { out.push_back(std::move(x)); });
  return out;
}

// Reduced fractions with denominator a power of p, capped by both the window
// bound and (if den_cap > 0) a largest allowed denominator.
std::vector<CircleRational> prufer_window(unsigned p, const BigInt& bound, const BigInt& den_cap) {
  std::vector<CircleRational> out;
  out.emplace_back();
  for (BigInt den = p; den <= bound && (den_cap == 0 || den <= den_cap); den *= p)
    emit_reduced_fractions(den, [&](CircleRational x) { out.push_back(std::move(x)); });
  return out;
}

// 0, +-q, +-2q, ... within [-bound, bound].
std::vector<BigInt> integer_multiples(const BigInt& q, const BigInt& bound) {
  std::vector<BigInt> out;
  BigInt steps = bound / q;
  for (BigInt k = -steps; k <= steps; ++k) out.push_back(k * q);
  return out;
}

// Small positive divisors of q, ascending.
std::vector<BigInt> divisors_up_to(const BigInt& q, const BigInt& bound) {
  std::vector<BigInt> low, high;
  for (BigInt d = 1; d * d <= q; ++d) {
    if (!divides(d, q)) continue;
    if (d <= bound) low.push_back(d);
    BigInt e = q / d;
    if (e != d && e <= bound) high.push_back(e);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  std::sort(low.begin(), low.end());
  return low;
}

bool circle_in_cycle(const CircleRational& x, const BigInt& q) {
  return divides(x.denominator(), q);
}

bool circle_in_prufer(const CircleRational& x, const BigInt& p) {
  const BigInt& den = x.denominator();
  if (den == 1) return true;
  BigInt rest;
  mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  return rest == 1;
}

}  // namespace

std::vector<Element> descriptor_points(const Subgroup& d, const BigInt& bound) {
  if (bound < 1) throw Error("window bound must be >= 1");
  const Ambient& a = d.ambient();
  std::vector<Element> out;

  switch (a.kind) {
    case Ambient::Kind::Z:
    case Ambient::Kind::PAdic: {
      auto wrap = [&](const BigInt& x) {
        return a.kind == Ambient::Kind::Z ? Element::integer(x) : Element::padic_int(a.p, x);
      };
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
          out.push_back(wrap(0));
          break;
        case Subgroup::Shape::Whole:
          for (const BigInt& x : integer_multiples(1, bound)) out.push_back(wrap(x));
          break;
        case Subgroup::Shape::MultiplesOfQ:
          for (const BigInt& x : integer_multiples(d.modulus(), bound)) out.push_back(wrap(x));
          break;
        case Subgroup::Shape::PAdicBall:
          if (a.kind == Ambient::Kind::PAdic) {
            for (const BigInt& x :
                 integer_multiples(pow_checked(BigInt(a.p), d.exponent()), bound))
              out.push_back(wrap(x));
            break;
          }
          [[fallthrough]];
        default:
          throw UnsupportedAmbient("no window rule for " + d.str() + " in " + a.str());
      }
      break;
    }
    case Ambient::Kind::Circle: {
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
          out.push_back(Element::circle(CircleRational()));
          break;
        case Subgroup::Shape::Whole:
          for (const CircleRational& x : circle_window(bound)) out.push_back(Element::circle(x));
          break;
        case Subgroup::Shape::CyclicInCircle:
          out.push_back(Element::circle(CircleRational()));
          for (const BigInt& den : divisors_up_to(d.modulus(), bound))
            emit_reduced_fractions(den,
                                   [&](CircleRational x) { out.push_back(Element::circle(x)); });
          break;
        case Subgroup::Shape::PruferInCircle:
          for (const CircleRational& x :
               prufer_window(static_cast<unsigned>(d.modulus().get_ui()), bound, 0))
            out.push_back(Element::circle(x));
          break;
        default:
          throw UnsupportedAmbient("no window rule for " + d.str() + " in T");
      }
      break;
    }
    case Ambient::Kind::Prufer: {
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
          out.push_back(Element::prufer(a.p, CircleRational()));
          break;
        case Subgroup::Shape::Whole:
          for (const CircleRational& x : prufer_window(a.p, bound, 0))
            out.push_back(Element::prufer(a.p, x));
          break;
        case Subgroup::Shape::FiniteCyclicPrufer:
          for (const CircleRational& x :
               prufer_window(a.p, bound, pow_checked(BigInt(a.p), d.exponent())))
            out.push_back(Element::prufer(a.p, x));
          break;
        default:
          throw UnsupportedAmbient("no window rule for " + d.str() + " in " + a.str());
      }
      break;
    }
    case Ambient::Kind::SplitGroup:
    case Ambient::Kind::SplitDual: {
      if (d.shape() != Subgroup::Shape::SplitProduct)
        throw UnsupportedAmbient("no window rule for " + d.str() + " in " + a.str());
      std::vector<unsigned> torsions;
      if (d.torsion_part() == Subgroup::TorsionPart::Zero) {
        torsions.push_back(0);
      } else {
        for (unsigned w = 0; w < a.p; ++w) torsions.push_back(w);
      }
      std::vector<Element> second = descriptor_points(d.second_factor(), bound);
      for (unsigned w : torsions)
        for (const Element& s : second)
          out.push_back(a.kind == Ambient::Kind::SplitGroup
                            ? Element::split_group(a.p, w, s.int_value())
                            : Element::split_dual(a.p, w, s.circle_value()));
      break;
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

bool descriptor_contains(const Subgroup& d, const Element& g) {
  if (g.ambient() != d.ambient())
    throw MismatchedAmbient("element of " + g.ambient().str() + " tested against subgroup of " +
                            d.ambient().str());
  switch (d.shape()) {
    case Subgroup::Shape::Zero:
      return g.is_zero();
    case Subgroup::Shape::Whole:
      return true;
    case Subgroup::Shape::MultiplesOfQ:
      return divides(d.modulus(), g.int_value());
    case Subgroup::Shape::CyclicInCircle:
      return circle_in_cycle(g.circle_value(), d.modulus());
    case Subgroup::Shape::PruferInCircle:
      return circle_in_prufer(g.circle_value(), d.modulus());
    case Subgroup::Shape::FiniteCyclicPrufer:
      return divides(g.circle_value().denominator(),
                     pow_checked(BigInt(d.ambient().p), d.exponent()));
    case Subgroup::Shape::PAdicBall:
      return divides(pow_checked(BigInt(d.ambient().p), d.exponent()), g.int_value());
    case Subgroup::Shape::SplitProduct: {
      if (d.torsion_part() == Subgroup::TorsionPart::Zero && g.torsion() != 0) return false;
      const Ambient& a = d.ambient();
      Element second = a.kind == Ambient::Kind::SplitGroup
                           ? Element::integer(g.free_part())
                           : Element::circle(g.circle_value());
      return descriptor_contains(d.second_factor(), second);
    }
  }
  throw Error("unreachable subgroup shape");
}

// ---------------------------------------------------------------------------
// Closure and annihilator.

Subgroup closure(const Subgroup& d) {
  const Ambient& a = d.ambient();
  switch (a.kind) {
    case Ambient::Kind::Circle:
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
        case Subgroup::Shape::Whole:
        case Subgroup::Shape::CyclicInCircle:
          return d;  // finite or everything: already closed
        case Subgroup::Shape::PruferInCircle:
          return Subgroup::whole(a);  // dense in T
        default:
          break;
      }
      break;
    case Ambient::Kind::PAdic:
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
        case Subgroup::Shape::Whole:
        case Subgroup::Shape::PAdicBall:
          return d;
        case Subgroup::Shape::MultiplesOfQ:
          // qZ accumulates p-adically onto the full ball p^{v_p(q)} Z_p.
          return Subgroup::padic_ball(a.p, static_cast<unsigned>(valuation(d.modulus(), BigInt(a.p))));
        default:
          break;
      }
      break;
    case Ambient::Kind::SplitDual:
      if (d.shape() == Subgroup::Shape::SplitProduct)
        return Subgroup::split_product(a, d.torsion_part(), closure(d.second_factor()));
      break;
    default:
      throw UnsupportedAmbient("closure is only defined over dual-side ambients, got " + a.str());
  }
  throw UnsupportedAmbient("no closure rule for " + d.str() + " in " + a.str());
}

Subgroup annihilator(const Subgroup& d) {
  const Ambient& a = d.ambient();
  Ambient pre = a.dual();
  switch (a.kind) {
    case Ambient::Kind::Circle:
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
          return Subgroup::whole(pre);
        case Subgroup::Shape::Whole:
        case Subgroup::Shape::PruferInCircle:
          // Any n killing all of Z(p^inf) (or T) must be 0.
          return Subgroup::zero(pre);
        case Subgroup::Shape::CyclicInCircle:
          return Subgroup::multiples_of(pre, d.modulus());
        default:
          break;
      }
      break;
    case Ambient::Kind::PAdic:
      switch (d.shape()) {
        case Subgroup::Shape::Zero:
          return Subgroup::whole(pre);
        case Subgroup::Shape::Whole:
          return Subgroup::zero(pre);
        case Subgroup::Shape::PAdicBall:
          return Subgroup::finite_cyclic_prufer(a.p, d.exponent());
        case Subgroup::Shape::MultiplesOfQ:
          // a/p^k kills qZ iff p^k | q, so only v_p(q) matters.
          return Subgroup::finite_cyclic_prufer(
              a.p, static_cast<unsigned>(valuation(d.modulus(), BigInt(a.p))));
        default:
          break;
      }
      break;
    case Ambient::Kind::SplitDual:
      if (d.shape() == Subgroup::Shape::SplitProduct) {
        auto flipped = d.torsion_part() == Subgroup::TorsionPart::Zero
                           ? Subgroup::TorsionPart::Whole
                           : Subgroup::TorsionPart::Zero;
        return Subgroup::split_product(pre, flipped, annihilator(d.second_factor()));
      }
      break;
    default:
      throw UnsupportedAmbient("annihilator is only defined over dual-side ambients, got " +
                               a.str());
  }
  throw UnsupportedAmbient("no annihilator rule for " + d.str() + " in " + a.str());
}

PointwiseAuditReport verify_annihilator_pointwise(const Subgroup& d, const BigInt& bound) {
  PointwiseAuditReport report;
  Subgroup ann = annihilator(d);

  std::vector<Element> chars = descriptor_points(d, bound);
  std::vector<Element> killers = descriptor_points(ann, bound);
  for (const Element& g : killers)
    for (const Element& chi : chars)
      if (!pairing(g, chi).is_zero()) {
        report.holds = false;
        report.detail = "annihilator point " + g.str() + " pairs to " +
                        pairing(g, chi).str() + " with " + chi.str();
        return report;
      }

  std::set<Element> in_ann(killers.begin(), killers.end());
  std::vector<Element> predual = descriptor_points(Subgroup::whole(ann.ambient()), bound);
  bool all_separated = true;
  for (const Element& g : predual) {
    if (in_ann.count(g)) continue;
    bool separated = false;
    for (BigInt w = bound; w <= bound * 16 && !separated; w *= 2)
      for (const Element& chi : descriptor_points(d, w))
        if (!pairing(g, chi).is_zero()) {
          separated = true;
          break;
        }
    if (!separated) {
      all_separated = false;
      report.witness_search_exhausted = true;
      report.detail = "no windowed character separates " + g.str();
      break;
    }
  }

  report.holds = all_separated;
  return report;
}

}  // namespace tseq
