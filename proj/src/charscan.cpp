#include "tseq/charscan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tseq {

long ConvergenceClass::zero_from() const {
  if (tag != Tag::EventuallyZero) throw PreconditionViolated("zero_from() needs EventuallyZero");
  return std::max<long>(1, std::max(2 * even_zero_from, 2 * odd_settle_from - 1));
}

namespace {

// Behaviour of n -> x * base^n on the circle.  Either the smooth denominator
// is absorbed and the orbit dies, or the rough part forces an exact nonzero
// value recurring with the multiplicative order of base modulo that part.
struct PowerOrbit {
  bool vanishes = false;
  long zero_from = 1;        // x * base^n == 0 for all n >= zero_from
  CircleRational recurring;  // otherwise the exact value at start + j*period
  long start = 1;
  long period = 1;
};

PowerOrbit power_orbit(const CircleRational& x, unsigned base) {
  PowerOrbit orbit;
  if (x.is_zero()) {
    orbit.vanishes = true;
    return orbit;
  }
  const BigInt den = x.denominator();
  SmoothSplit parts = smooth_split(den, BigInt(base));
  if (parts.rough == 1) {
    orbit.vanishes = true;
    orbit.zero_from = std::max<long>(1, static_cast<long>(smooth_log(den, BigInt(base))));
    return orbit;
  }
  long absorb =
      parts.smooth == 1 ? 0 : static_cast<long>(smooth_log(parts.smooth, BigInt(base)));
  orbit.start = std::max<long>(1, absorb);
  orbit.period = static_cast<long>(multiplicative_order(BigInt(base), parts.rough));
  orbit.recurring = x.scaled(pow_checked(BigInt(base), static_cast<unsigned long>(orbit.start)));
  return orbit;
}

// Smallest block n >= 1 with n^3 - n^2 >= need, i.e. from which the whole
// power tail is divisible by base^need.
long tail_settle_block(long need) {
  long n = 1;
  while (n * n * n - n * n < need) ++n;
  return n;
}

ConvergenceClass classify_power_families(const SequenceSpec& spec, const CircleRational& x,
                                         const CircleRational& odd_offset_value) {
  // Shared by IntegerGamma (offset gamma*x) and SplitSum (offset a*w/p):
  // even terms pair to x*base^n, odd terms to offset + x*tail_power_sum.
  ConvergenceClass cls;
  if (x.is_zero() && odd_offset_value.is_zero()) {
    cls.tag = ConvergenceClass::Tag::EventuallyZero;
    cls.even_zero_from = 1;
    cls.odd_settle_from = 1;
    cls.detail = "zero character";
    return cls;
  }
  PowerOrbit orbit = power_orbit(x, spec.base);
  if (!orbit.vanishes) {
    cls.tag = ConvergenceClass::Tag::NonConvergent;
    cls.recurring = orbit.recurring;
    cls.recur_start = orbit.start;
    cls.recur_period = orbit.period;
    std::ostringstream os;
    os << "denominator " << x.denominator().get_str() << " has a factor coprime to "
       << spec.base << "; even terms recur with period " << orbit.period;
    cls.detail = os.str();
    return cls;
  }
  cls.even_zero_from = orbit.zero_from;
  cls.odd_settle_from = x.is_zero() ? 1 : tail_settle_block(orbit.zero_from);
  cls.limit = odd_offset_value;
  if (cls.limit.is_zero()) {
    cls.tag = ConvergenceClass::Tag::EventuallyZero;
    cls.detail = "smooth denominator is absorbed by the base powers and the offset cancels";
  } else {
    cls.tag = ConvergenceClass::Tag::ConvergesToNonzero;
    cls.detail = "even terms die out but odd terms settle on the offset value";
  }
  return cls;
}

ConvergenceClass classify_prufer(const SequenceSpec& spec, const Element& chi) {
  ConvergenceClass cls;
  const unsigned p = spec.base;
  if (!chi.padic_exact()) {
    cls.tag = ConvergenceClass::Tag::Inconclusive;
    const long prec = static_cast<long>(chi.padic_value().precision());
    long idx = 0;
    for (;;) {
      TermIndex ti = TermIndex::of(idx + 1);
      long need = ti.odd ? std::max<long>(ti.block * ti.block * ti.block, spec.order_exp)
                         : ti.block;
      if (need > prec) break;
      ++idx;
    }
    cls.evaluated_to = idx;
    std::ostringstream os;
    os << "character known only modulo " << p << "^" << prec
       << "; membership depends on deeper digits (decidable through index " << idx << ")";
    cls.detail = os.str();
    return cls;
  }

  const BigInt& z = chi.int_value();
  if (z == 0) {
    cls.tag = ConvergenceClass::Tag::EventuallyZero;
    cls.even_zero_from = 1;
    cls.odd_settle_from = 1;
    cls.detail = "zero character";
    return cls;
  }
  cls.decay_scale = abs(z);
  // Odd terms pair to z*u + z*tail with |z*tail| <= |z|(n+1)/p^(n^3-n^2).
  cls.limit = CircleRational(z, pow_checked(BigInt(p), spec.order_exp));
  if (cls.limit.is_zero()) {
    cls.tag = ConvergenceClass::Tag::NullByDecay;
    cls.odd_settle_from = 1;
    std::ostringstream os;
    os << p << "^" << spec.order_exp << " divides " << z.get_str()
       << "; every term is bounded by an explicit vanishing fraction";
    cls.detail = os.str();
    return cls;
  }
  cls.tag = ConvergenceClass::Tag::ConvergesToNonzero;
  Rational half_gap = circ_norm(cls.limit) / 2;
  long n = 1;
  for (;; ++n) {
    Rational bound(cls.decay_scale * (n + 1),
                   pow_checked(BigInt(p), static_cast<unsigned long>(n * n * n - n * n)));
    if (bound < half_gap) break;
  }
  cls.odd_settle_from = n;
  std::ostringstream os;
  os << "odd terms approach " << cls.limit.str() << " and stay within half its norm from block "
     << n << " on";
  cls.detail = os.str();
  return cls;
}

}  // namespace

ConvergenceClass classify_pairing_limit(const SequenceSpec& spec, const Element& chi) {
  if (chi.ambient() != spec.dual_ambient())
    throw MismatchedAmbient("character of " + chi.ambient().str() + " scanned against " +
                            spec.str());
  switch (spec.family) {
    case SequenceSpec::Family::IntegerGamma: {
      const CircleRational& x = chi.circle_value();
      return classify_power_families(spec, x, x.scaled(spec.gamma));
    }
    case SequenceSpec::Family::SplitSum: {
      const CircleRational& x = chi.circle_value();
      CircleRational offset(BigInt(spec.torsion_coeff) * chi.torsion(), BigInt(spec.base));
      return classify_power_families(spec, x, offset);
    }
    case SequenceSpec::Family::PruferSum:
      return classify_prufer(spec, chi);
  }
  throw Error("unreachable family");
}

bool pairing_tends_to_zero(const SequenceSpec& spec, const Element& chi) {
  if (chi.ambient() != spec.dual_ambient())
    throw MismatchedAmbient("character of " + chi.ambient().str() + " scanned against " +
                            spec.str());
  switch (spec.family) {
    case SequenceSpec::Family::IntegerGamma:
    case SequenceSpec::Family::SplitSum: {
      const CircleRational& x = chi.circle_value();
      if (!x.is_zero() && smooth_split(x.denominator(), BigInt(spec.base)).rough != 1)
        return false;  // the even subsequence recurs on a nonzero value
      CircleRational limit =
          spec.family == SequenceSpec::Family::IntegerGamma
              ? x.scaled(spec.gamma)
              : CircleRational(BigInt(spec.torsion_coeff) * chi.torsion(), BigInt(spec.base));
      return limit.is_zero();
    }
    case SequenceSpec::Family::PruferSum: {
      if (!chi.padic_exact())
        throw PrecisionExhausted("membership of a truncated character is undecidable");
      return divides(pow_checked(BigInt(spec.base), spec.order_exp), chi.int_value());
    }
  }
  throw Error("unreachable family");
}

void verify_certificate(const SequenceSpec& spec, const Element& chi,
                        const ConvergenceClass& cls, long n_max) {
  using Tag = ConvergenceClass::Tag;
  if (n_max < 1) throw PreconditionViolated("certificate check needs n_max >= 1");
  SequenceCache cache(spec);
  const bool prufer = spec.family == SequenceSpec::Family::PruferSum;

  auto fail = [&](long idx, const std::string& why) {
    std::ostringstream os;
    os << "certificate mismatch at index " << idx << " for character " << chi.str() << ": "
       << why;
    throw Error(os.str());
  };

  if (cls.tag == Tag::Inconclusive) {
    for (long idx = 1; idx <= std::min(n_max, cls.evaluated_to); ++idx)
      pairing(cache.term(idx), chi);  // must evaluate without exhausting precision
    if (cls.evaluated_to < n_max) {
      try {
        pairing(cache.term(cls.evaluated_to + 1), chi);
        fail(cls.evaluated_to + 1, "expected the precision to run out");
      } catch (const PrecisionExhausted&) {
      }
    }
    return;
  }

  if (cls.tag == Tag::NonConvergent && cls.recurring.is_zero())
    fail(0, "recurring value must be nonzero");

  // Pairings are only evaluated at indices the certificate makes a claim
  // about; the claim-free prefix is skipped.
  for (long idx = 1; idx <= n_max; ++idx) {
    TermIndex ti = TermIndex::of(idx);
    const long n = ti.block;
    switch (cls.tag) {
      case Tag::EventuallyZero: {
        if (idx < cls.zero_from()) break;
        CircleRational value = pairing(cache.term(idx), chi);
        if (!value.is_zero()) fail(idx, "expected 0, got " + value.str());
        break;
      }
      case Tag::NullByDecay: {
        CircleRational value = pairing(cache.term(idx), chi);
        Rational bound =
            ti.odd ? Rational(cls.decay_scale * (n + 1),
                              pow_checked(BigInt(spec.base),
                                          static_cast<unsigned long>(n * n * n - n * n)))
                   : Rational(cls.decay_scale,
                              pow_checked(BigInt(spec.base), static_cast<unsigned long>(n)));
        if (circ_norm(value) > bound) fail(idx, "decay bound violated by " + value.str());
        break;
      }
      case Tag::ConvergesToNonzero:
        if (!prufer) {
          if (!ti.odd && n >= cls.even_zero_from) {
            CircleRational value = pairing(cache.term(idx), chi);
            if (!value.is_zero()) fail(idx, "expected a vanished even term, got " + value.str());
          } else if (ti.odd && n >= cls.odd_settle_from) {
            CircleRational value = pairing(cache.term(idx), chi);
            if (!(value == cls.limit))
              fail(idx, "expected the limit " + cls.limit.str() + ", got " + value.str());
          }
        } else if (!ti.odd) {
          CircleRational value = pairing(cache.term(idx), chi);
          Rational bound(cls.decay_scale,
                         pow_checked(BigInt(spec.base), static_cast<unsigned long>(n)));
          if (circ_norm(value) > bound) fail(idx, "even decay bound violated");
        } else if (n >= cls.odd_settle_from) {
          CircleRational value = pairing(cache.term(idx), chi);
          CircleRational gap = value - cls.limit;
          if (circ_norm(gap) * 2 >= circ_norm(cls.limit))
            fail(idx, "odd term " + value.str() + " strays from the limit");
          if (value.is_zero()) fail(idx, "odd term vanished despite a nonzero limit");
        }
        break;
      case Tag::NonConvergent:
        if (!ti.odd && n >= cls.recur_start && (n - cls.recur_start) % cls.recur_period == 0) {
          CircleRational value = pairing(cache.term(idx), chi);
          if (!(value == cls.recurring))
            fail(idx, "expected recurring value " + cls.recurring.str() + ", got " + value.str());
        }
        break;
      case Tag::Inconclusive:
        break;  // handled above
    }
  }
}

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Subgroup> circle_candidates(long reach) {
  std::vector<Subgroup> cands;
  cands.push_back(Subgroup::zero(Ambient::circle()));
  cands.push_back(Subgroup::whole(Ambient::circle()));
  for (long q = 2; q <= reach; ++q) cands.push_back(Subgroup::cyclic_in_circle(BigInt(q)));
  for (long p = 2; p <= reach; ++p)
    if (is_prime(p)) cands.push_back(Subgroup::prufer_in_circle(static_cast<unsigned>(p)));
  return cands;
}

// Candidate descriptors whose windows a scan result is matched against.
// `reach` extends past the window bound so that subgroups sparser than the
// window (e.g. multiples of q > B, seen only as {0}) stay in play and are
// settled by refinement.  P-adic balls are deliberately absent: on integer
// windows they are indistinguishable from plain multiples, and they only
// ever arise later via closure.
std::vector<Subgroup> candidate_descriptors(const Ambient& amb, long reach) {
  std::vector<Subgroup> cands;
  switch (amb.kind) {
    case Ambient::Kind::Circle:
      return circle_candidates(reach);
    case Ambient::Kind::Z:
    case Ambient::Kind::PAdic: {
      cands.push_back(Subgroup::zero(amb));
      cands.push_back(Subgroup::whole(amb));
      for (long q = 2; q <= reach; ++q) cands.push_back(Subgroup::multiples_of(amb, BigInt(q)));
      return cands;
    }
    case Ambient::Kind::SplitDual: {
      for (Subgroup::TorsionPart t :
           {Subgroup::TorsionPart::Zero, Subgroup::TorsionPart::Whole})
        for (const Subgroup& second : circle_candidates(reach))
          cands.push_back(Subgroup::split_product(amb, t, second));
      return cands;
    }
    default:
      throw UnsupportedAmbient("no candidate descriptors for " + amb.str());
  }
}

std::vector<std::string> descriptor_names(const std::vector<Subgroup>& ds) {
  std::vector<std::string> out;
  out.reserve(ds.size());
  for (const Subgroup& d : ds) out.push_back(d.str());
  return out;
}

std::vector<std::string> element_names(const std::vector<Element>& es) {
  std::vector<std::string> out;
  out.reserve(es.size());
  for (const Element& e : es) out.push_back(e.str());
  return out;
}

// Separating points for one candidate: its generator, plus a point beyond
// every bounded candidate for the unbounded shapes.  Probing these through
// the membership oracle lets exactly one candidate survive: two distinct
// shapes always disagree on one of their mutual generators.
std::vector<Element> generator_probes(const Subgroup& d, const BigInt& beyond) {
  const Ambient& a = d.ambient();
  switch (d.shape()) {
    case Subgroup::Shape::Zero:
      return {};
    case Subgroup::Shape::Whole:
      switch (a.kind) {
        case Ambient::Kind::Circle:
          return {Element::circle(CircleRational(1, beyond))};
        case Ambient::Kind::Z:
          return {Element::integer(beyond)};
        case Ambient::Kind::PAdic:
          return {Element::padic_int(a.p, beyond)};
        default:
          return {};
      }
    case Subgroup::Shape::MultiplesOfQ:
      return {a.kind == Ambient::Kind::Z ? Element::integer(d.modulus())
                                         : Element::padic_int(a.p, d.modulus())};
    case Subgroup::Shape::CyclicInCircle:
      return {Element::circle(CircleRational(1, d.modulus()))};
    case Subgroup::Shape::PruferInCircle: {
      BigInt pe = d.modulus();
      while (pe <= beyond) pe *= d.modulus();
      return {Element::circle(CircleRational(1, d.modulus())),
              Element::circle(CircleRational(1, pe))};
    }
    case Subgroup::Shape::SplitProduct: {
      std::vector<Element> out;
      out.push_back(Element::split_dual(a.p, 1, CircleRational()));
      for (const Element& x : generator_probes(d.second_factor(), beyond))
        out.push_back(Element::split_dual(a.p, 0, x.circle_value()));
      return out;
    }
    default:
      return {};
  }
}

}  // namespace

Subgroup recognize_subgroup(const Ambient& dual_ambient, const std::vector<Element>& accepted,
                            const BigInt& bound,
                            const std::function<bool(const Element&)>& is_member) {
  if (!bound.fits_slong_p() || bound < 1)
    throw PreconditionViolated("recognition bound must be a small positive integer");
  const long b = bound.get_si();
  const long reach = b * b + 8;

  std::vector<Subgroup> live;
  for (const Subgroup& cand : candidate_descriptors(dual_ambient, reach))
    if (descriptor_points(cand, bound) == accepted) live.push_back(cand);
  if (live.empty())
    throw RecognitionFailed("no candidate subgroup matches the accepted window",
                            element_names(accepted));

  // Candidates sparser than the window (all collapsing to {0}), a full cycle
  // versus the matching Prufer part, and similar ties are all settled by
  // probing every survivor's generators: the oracle's verdict on each probe
  // eliminates every candidate on the wrong side of it.
  BigInt beyond = reach;
  mpz_nextprime(beyond.get_mpz_t(), beyond.get_mpz_t());
  std::set<Element> probes;
  for (const Subgroup& cand : live)
    for (const Element& u : generator_probes(cand, beyond)) probes.insert(u);
  for (const Element& u : probes) {
    const bool member = is_member(u);
    std::erase_if(live,
                  [&](const Subgroup& cand) { return descriptor_contains(cand, u) != member; });
  }
  if (live.empty())
    throw RecognitionFailed("generator probes eliminated every candidate",
                            element_names(accepted));
  if (live.size() > 1)
    throw RecognitionAmbiguous("several candidate subgroups survive generator probes",
                               element_names(accepted), descriptor_names(live));
  return live.front();
}

namespace {

ScanResult scan_window(const SequenceSpec& spec, const Ambient& dual, const BigInt& bound,
                       long n_max) {
  ScanResult r;
  r.spec = spec;
  r.bound = bound;
  r.n_max = n_max;
  r.window = descriptor_points(Subgroup::whole(dual), bound);
  r.classes.reserve(r.window.size());
  for (const Element& chi : r.window) {
    ConvergenceClass cls = classify_pairing_limit(spec, chi);
    verify_certificate(spec, chi, cls, n_max);
    if (cls.member()) r.accepted.push_back(chi);
    r.classes.push_back(std::move(cls));
  }
  r.recognized = recognize_subgroup(
      dual, r.accepted, bound, [&](const Element& e) { return pairing_tends_to_zero(spec, e); });
  return r;
}

}  // namespace

ScanResult scan_s_u(const SequenceSpec& spec, const BigInt& bound, long n_max) {
  return scan_window(spec, spec.dual_ambient(), bound, n_max);
}

ScanResult scan_s_u_prufer_dual(const SequenceSpec& spec, const BigInt& window, long n_max) {
  if (spec.family != SequenceSpec::Family::PruferSum)
    throw PreconditionViolated("the integer-character scan applies to the Prufer family only");
  return scan_window(spec, spec.dual_ambient(), window, n_max);
}

}  // namespace tseq
