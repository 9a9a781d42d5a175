#include "tseq/radical.hpp"

#include <sstream>

namespace tseq {

namespace {

std::string closure_rule_text(const Subgroup& before, const Subgroup& after) {
  if (before == after) return "descriptor already closed";
  std::ostringstream os;
  os << before.str() << " is dense in its closure " << after.str();
  return os.str();
}

std::string annihilator_rule_text(const Subgroup& closed) {
  switch (closed.shape()) {
    case Subgroup::Shape::Zero:
      return "only the zero character constrains nothing: every group element survives";
    case Subgroup::Shape::Whole:
      return "the full dual separates points: only 0 is killed by everything";
    case Subgroup::Shape::CyclicInCircle:
      return "integers kill the q-cycle exactly when divisible by q";
    case Subgroup::Shape::PAdicBall:
      return "p-power denominators up to the ball valuation survive pairing with the ball";
    case Subgroup::Shape::MultiplesOfQ:
      return "only the p-part of q matters against p-power denominators";
    case Subgroup::Shape::SplitProduct:
      return "factorwise: the torsion factor flips, the second factor annihilates";
    default:
      return "rule table";
  }
}

}  // namespace

RadicalResult compute_radical(const SequenceSpec& spec, const BigInt& bound, long n_max) {
  RadicalResult r;
  r.spec = spec;
  r.scan = scan_s_u(spec, bound, n_max);
  {
    std::ostringstream os;
    os << "classified " << r.scan.window.size() << " characters (window " << bound.get_str()
       << "), accepted " << r.scan.accepted.size() << "; certificates re-checked through index "
       << n_max;
    r.provenance.push_back({"scan", os.str(), r.scan.recognized.str()});
  }

  r.closed = closure(r.scan.recognized);
  r.provenance.push_back(
      {"closure", closure_rule_text(r.scan.recognized, r.closed), r.closed.str()});

  r.radical = annihilator(r.closed);
  r.provenance.push_back({"annihilator", annihilator_rule_text(r.closed), r.radical.str()});

  r.almost_map = almost_map_check(r.radical);
  r.provenance.push_back({"finiteness",
                          r.almost_map ? "radical is finite and nontrivial"
                                       : "radical is trivial or infinite",
                          r.almost_map ? "almost-map" : "not an almost-map"});
  return r;
}

bool almost_map_check(const Subgroup& subgroup) {
  switch (subgroup.shape()) {
    case Subgroup::Shape::CyclicInCircle:
      return subgroup.modulus() >= 2;
    case Subgroup::Shape::FiniteCyclicPrufer:
      return subgroup.exponent() >= 1;
    case Subgroup::Shape::SplitProduct:
      // Finite iff the free/second factor is trivial; nontrivial iff the
      // torsion factor (or the second factor, but then it is infinite or
      // zero) contributes.
      return subgroup.torsion_part() == Subgroup::TorsionPart::Whole &&
             subgroup.second_factor().shape() == Subgroup::Shape::Zero;
    case Subgroup::Shape::Whole:
      // The whole group is finite and nontrivial only for Z(p) factors,
      // which normalize() folds into SplitProduct; standalone ambients here
      // are all infinite.
      return false;
    default:
      return false;
  }
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> es;

    es.push_back(
        {"integer-offset-one",
         "over Z with offset 1, every character with a base-smooth denominator survives the "
         "even terms but is dragged to its own value by the odd ones; only the zero character "
         "vanishes, so the radical is all of Z",
         [](const SequenceSpec& s) {
           return s.family == SequenceSpec::Family::IntegerGamma && s.gamma == 1;
         },
         [](const SequenceSpec& s) { return Subgroup::whole(s.ambient()); }});

    es.push_back(
        {"integer-offset-base",
         "over Z with offset q, the accepted characters form the q-cycle of the circle and the "
         "radical is qZ",
         [](const SequenceSpec& s) {
           return s.family == SequenceSpec::Family::IntegerGamma && s.gamma == s.base;
         },
         [](const SequenceSpec& s) { return Subgroup::multiples_of(s.ambient(), BigInt(s.base)); }});

    es.push_back(
        {"split-torsion-factor",
         "over Z(p) + Z the accepted characters are 0 + Z(p^inf), whose closure is 0 + T; the "
         "radical is the finite torsion factor Z(p) + 0",
         [](const SequenceSpec& s) { return s.family == SequenceSpec::Family::SplitSum; },
         [](const SequenceSpec& s) {
           return Subgroup::split_product(s.ambient(), Subgroup::TorsionPart::Whole,
                                          Subgroup::zero(Ambient::integers()));
         }});

    es.push_back(
        {"prufer-cycle",
         "over Z(p^inf) the accepted integer characters are the multiples of p^c, closing to "
         "the ball p^c Z_p; the radical is the cycle of order p^c generated by the fixed "
         "summand",
         [](const SequenceSpec& s) { return s.family == SequenceSpec::Family::PruferSum; },
         [](const SequenceSpec& s) {
           return Subgroup::finite_cyclic_prufer(s.base, s.order_exp);
         }});

    return es;
  }();
  return entries;
}

std::optional<Subgroup> registry_lookup(const SequenceSpec& spec) {
  for (const RegistryEntry& e : registry())
    if (e.matches(spec)) return e.expected(spec);
  return std::nullopt;
}

}  // namespace tseq
