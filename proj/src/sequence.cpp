#include "tseq/sequence.hpp"

namespace tseq {

SequenceSpec SequenceSpec::split_sum(unsigned p, unsigned torsion_coeff) {
  if (p < 2) throw Error("split-sum base must be a prime >= 2");
  if (torsion_coeff == 0 || torsion_coeff >= p)
    throw Error("split-sum torsion coefficient must lie in [1, p)");
  SequenceSpec s;
  s.family = Family::SplitSum;
  s.base = p;
  s.torsion_coeff = torsion_coeff;
  return s;
}

SequenceSpec SequenceSpec::prufer_sum(unsigned p, unsigned order_exp) {
  if (p < 2) throw Error("prufer-sum base must be a prime >= 2");
  if (order_exp == 0) throw Error("prufer-sum order exponent must be >= 1");
  SequenceSpec s;
  s.family = Family::PruferSum;
  s.base = p;
  s.order_exp = order_exp;
  return s;
}

SequenceSpec SequenceSpec::integer_gamma(unsigned q, BigInt gamma) {
  if (q < 2) throw Error("integer-gamma base must be >= 2");
  if (gamma < 1) throw Error("integer-gamma offset must be >= 1");
  SequenceSpec s;
  s.family = Family::IntegerGamma;
  s.base = q;
  s.gamma = std::move(gamma);
  return s;
}

Ambient SequenceSpec::ambient() const {
  switch (family) {
    case Family::SplitSum: return Ambient::split_group(base);
    case Family::PruferSum: return Ambient::prufer(base);
    case Family::IntegerGamma: return Ambient::integers();
  }
  throw Error("corrupt sequence spec");
}

std::string SequenceSpec::str() const {
  switch (family) {
    case Family::SplitSum:
      return "split-sum(p=" + std::to_string(base) +
             ", a=" + std::to_string(torsion_coeff) + ")";
    case Family::PruferSum:
      return "prufer-sum(p=" + std::to_string(base) + ", c=" + std::to_string(order_exp) + ")";
    case Family::IntegerGamma:
      return "integer-gamma(q=" + std::to_string(base) + ", gamma=" + gamma.get_str() + ")";
  }
  throw Error("corrupt sequence spec");
}

TermIndex TermIndex::of(long index) {
  if (index < 1) throw Error("sequence indices are 1-based");
  TermIndex t;
  t.index = index;
  t.odd = (index % 2) == 1;
  t.block = (index + 1) / 2;
  return t;
}

BigInt tail_power_sum(unsigned base, long n) {
  if (n < 1) throw Error("tail_power_sum needs n >= 1");
  unsigned long n3 = static_cast<unsigned long>(n) * n * n;
  BigInt acc = 0;
  // Exponents n^3 - j*n for j = n down to 0; the j = 0 power dominates and
  // trips the guard first, so start there.
  for (long j = 0; j <= n; ++j)
    acc += pow_checked(BigInt(base), n3 - static_cast<unsigned long>(j) * n);
  return acc;
}

Element seq_term(const SequenceSpec& spec, long n) {
  TermIndex t = TermIndex::of(n);
  unsigned long block = static_cast<unsigned long>(t.block);
  switch (spec.family) {
    case SequenceSpec::Family::IntegerGamma:
      if (!t.odd) return Element::integer(pow_checked(BigInt(spec.base), block));
      return Element::integer(spec.gamma + tail_power_sum(spec.base, t.block));
    case SequenceSpec::Family::SplitSum:
      if (!t.odd)
        return Element::split_group(spec.base, 0, pow_checked(BigInt(spec.base), block));
      return Element::split_group(spec.base, static_cast<long>(spec.torsion_coeff),
                                  tail_power_sum(spec.base, t.block));
    case SequenceSpec::Family::PruferSum: {
      if (!t.odd)
        return Element::prufer(spec.base,
                               CircleRational(1, pow_checked(BigInt(spec.base), block)));
      // u + sum_j 1/p^(n^3 - jn)  =  (tail sum scaled to a common p-power
      // denominator) + 1/p^c, all inside Z(p^inf).
      unsigned long n3 = block * block * block;
      BigInt den = pow_checked(BigInt(spec.base), n3);
      BigInt num = 0;
      for (long j = 0; j <= t.block; ++j)
        num += pow_checked(BigInt(spec.base), static_cast<unsigned long>(j) * block);
      CircleRational tail(num, den);
      CircleRational u(1, pow_checked(BigInt(spec.base), spec.order_exp));
      return Element::prufer(spec.base, tail + u);
    }
  }
  throw Error("corrupt sequence spec");
}

const Element& SequenceCache::term(long n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  Element value = seq_term(spec_, n);
  return memo_.emplace(n, std::move(value)).first->second;
}

}  // namespace tseq
