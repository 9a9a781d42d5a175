#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "tseq/patterns.hpp"

using namespace tseq;

namespace {

/// Independent enumeration: odometer over full coefficient vectors
/// (c_m, ..., c_H) with sum |c_i| <= k+1, skipping the all-zero vector.
/// Returns the multiset of exact values the combinations take.
std::map<std::string, long> value_multiset_by_vectors(const SequenceCache& seq, long k, long m,
                                                      long horizon) {
  std::map<std::string, long> values;
  long width = horizon - m + 1;
  std::vector<long> coeff(static_cast<std::size_t>(width), -(k + 1));
  while (true) {
    long weight = 0;
    for (long c : coeff) weight += std::abs(c);
    bool all_zero = std::all_of(coeff.begin(), coeff.end(), [](long c) { return c == 0; });
    if (weight <= k + 1 && !all_zero) {
      Element acc = Element::zero(seq.spec().ambient());
      for (long i = 0; i < width; ++i)
        if (coeff[static_cast<std::size_t>(i)] != 0)
          acc = acc + seq.term(m + i).scaled(BigInt(coeff[static_cast<std::size_t>(i)]));
      values[acc.str()]++;
    }
    long pos = 0;
    while (pos < width && coeff[static_cast<std::size_t>(pos)] == k + 1) {
      coeff[static_cast<std::size_t>(pos)] = -(k + 1);
      ++pos;
    }
    if (pos == width) break;
    coeff[static_cast<std::size_t>(pos)]++;
  }
  return values;
}

std::map<std::string, long> value_multiset_by_patterns(const SequenceCache& seq, long k, long m,
                                                       long horizon) {
  std::map<std::string, long> values;
  for_each_pattern(k, m, horizon,
                   [&](const SumPattern& p) { values[pattern_value(seq, p).str()]++; });
  return values;
}

}  // namespace

TEST_CASE("pattern counts against closed forms") {
  // Weight 1: one index, coefficient +-1.
  CHECK(count_patterns(0, 5, 5) == 2);
  CHECK(count_patterns(0, 1, 6) == 12);
  // Weight 2 on a single index: coefficients +-1, +-2.
  CHECK(count_patterns(1, 1, 1) == 4);
  // Weight 2 over two indices: 8 singles + 4 sign choices on the pair.
  CHECK(count_patterns(1, 1, 2) == 12);
  CHECK(count_patterns(2, 1, 2) == 24);
  // Shifting the start window only relabels indices.
  CHECK(count_patterns(1, 10, 11) == count_patterns(1, 1, 2));
}

TEST_CASE("every visited pattern satisfies the bounds and is unique") {
  std::vector<std::string> seen;
  for_each_pattern(2, 3, 8, [&](const SumPattern& p) {
    REQUIRE(!p.empty());
    CHECK(p.weight() <= 3);
    CHECK(p.weight() >= 1);
    CHECK(p.min_index() >= 3);
    CHECK(p.max_index() <= 8);
    for (std::size_t i = 0; i + 1 < p.terms.size(); ++i)
      CHECK(p.terms[i].index < p.terms[i + 1].index);
    for (const SumPattern::Term& t : p.terms) CHECK(t.coeff != 0);
    seen.push_back(p.str());
  });
  CHECK(seen.size() == count_patterns(2, 3, 8));
  std::vector<std::string> sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("enumeration is deterministic") {
  std::vector<SumPattern> a = enumerate_patterns(2, 2, 7);
  std::vector<SumPattern> b = enumerate_patterns(2, 2, 7);
  CHECK(a == b);
  CHECK(a.size() == count_patterns(2, 2, 7));
}

TEST_CASE("pattern values match a full coefficient-vector enumeration") {
  struct Instance {
    SequenceSpec spec;
    long k, m, horizon;
  };
  const Instance instances[] = {
      {SequenceSpec::integer_gamma(3, BigInt(3)), 2, 1, 6},
      {SequenceSpec::integer_gamma(2, BigInt(1)), 1, 2, 8},
      {SequenceSpec::split_sum(3), 2, 1, 5},
      {SequenceSpec::prufer_sum(2, 1), 2, 1, 6},
  };
  for (const Instance& inst : instances) {
    SequenceCache seq(inst.spec);
    CHECK(value_multiset_by_patterns(seq, inst.k, inst.m, inst.horizon) ==
          value_multiset_by_vectors(seq, inst.k, inst.m, inst.horizon));
  }
}

TEST_CASE("windows shrink as the start index grows and grow with the weight cap") {
  CHECK(count_patterns(1, 3, 8) > count_patterns(1, 4, 8));
  CHECK(count_patterns(2, 3, 8) > count_patterns(1, 3, 8));
  for_each_pattern(1, 4, 8, [&](const SumPattern& p) { CHECK(p.min_index() >= 4); });
}

TEST_CASE("pattern evaluation and text") {
  SequenceCache seq(SequenceSpec::integer_gamma(3, BigInt(3)));
  SumPattern p;
  p.terms.push_back({1, BigInt(1)});
  p.terms.push_back({2, BigInt(-2)});
  CHECK(p.weight() == 3);
  CHECK(p.str() == "d1 - 2*d2");
  CHECK(pattern_value(seq, p) == Element::integer(1));  // 7 - 2*3

  SumPattern neg;
  neg.terms.push_back({4, BigInt(-1)});
  CHECK(neg.str() == "-d4");
  CHECK(pattern_value(seq, neg) == Element::integer(-9));

  CHECK(pattern_value(seq, SumPattern{}) == Element::integer(0));
  CHECK(SumPattern{}.str() == "(empty)");
}
