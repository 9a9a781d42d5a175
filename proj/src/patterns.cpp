#include "tseq/patterns.hpp"

namespace tseq {

BigInt SumPattern::weight() const {
  BigInt w = 0;
  for (const Term& t : terms) w += abs(t.coeff);
  return w;
}

long SumPattern::min_index() const {
  if (terms.empty()) throw Error("empty pattern has no indices");
  return terms.front().index;
}

long SumPattern::max_index() const {
  if (terms.empty()) throw Error("empty pattern has no indices");
  return terms.back().index;
}

std::string SumPattern::str() const {
  if (terms.empty()) return "(empty)";
  std::string out;
  for (const Term& t : terms) {
    BigInt a = abs(t.coeff);
    if (out.empty()) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    if (a != 1) out += a.get_str() + "*";
    out += "d" + std::to_string(t.index);
  }
  return out;
}

namespace {

// Depth-first extension: at each step either stop, or append a term with a
// strictly larger index and a nonzero coefficient within the leftover weight.
// Coefficients are visited in the order -w..-1, 1..w; indices ascending.
void extend(SumPattern& acc, long next_index, long horizon, long leftover,
            const std::function<void(const SumPattern&)>& visit) {
  if (!acc.terms.empty()) visit(acc);
  if (leftover < 1) return;
  for (long i = next_index; i <= horizon; ++i) {
    for (long c = -leftover; c <= leftover; ++c) {
      if (c == 0) continue;
      acc.terms.push_back({i, BigInt(c)});
      extend(acc, i + 1, horizon, leftover - (c < 0 ? -c : c), visit);
      acc.terms.pop_back();
    }
  }
}

}  // namespace

void for_each_pattern(long k, long m, long horizon,
                      const std::function<void(const SumPattern&)>& visit) {
  if (k < 0) throw Error("pattern weight bound needs k >= 0");
  if (m < 1 || m > horizon) throw Error("pattern index range needs 1 <= m <= horizon");
  SumPattern acc;
  extend(acc, m, horizon, k + 1, visit);
}

std::vector<SumPattern> enumerate_patterns(long k, long m, long horizon) {
  std::vector<SumPattern> out;
  for_each_pattern(k, m, horizon, [&](const SumPattern& p) { out.push_back(p); });
  return out;
}

unsigned long long count_patterns(long k, long m, long horizon) {
  unsigned long long n = 0;
  for_each_pattern(k, m, horizon, [&](const SumPattern&) { ++n; });
  return n;
}

Element pattern_value(const SequenceCache& seq, const SumPattern& pattern) {
  Element acc = Element::zero(seq.spec().ambient());
  for (const SumPattern::Term& t : pattern.terms)
    acc = acc + seq.term(t.index).scaled(t.coeff);
  return acc;
}

}  // namespace tseq
