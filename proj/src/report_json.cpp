#include "tseq/report_json.hpp"

namespace tseq {

Json json_big(const BigInt& n) {
  std::string dec = n.get_str();
  if (dec.size() <= kBigDigitLimit) return dec;
  const std::size_t keep = 32;
  return Json{{"digits", dec.size() - (dec[0] == '-' ? 1 : 0)},
              {"leading", dec.substr(0, keep)},
              {"trailing", dec.substr(dec.size() - keep)},
              {"truncated", true}};
}

Json json_rational(const Rational& q) {
  if (q.get_den() == 1) return json_big(q.get_num());
  return Json{{"num", json_big(q.get_num())}, {"den", json_big(q.get_den())}};
}

Json json_circle(const CircleRational& x) {
  return Json{{"num", json_big(x.numerator())}, {"den", json_big(x.denominator())}};
}

Json json_element(const Element& e) {
  return Json{{"ambient", e.ambient().str()}, {"value", e.str()}};
}

Json json_spec(const SequenceSpec& spec) {
  Json j;
  j["family"] = spec.str();
  j["base"] = spec.base;
  switch (spec.family) {
    case SequenceSpec::Family::IntegerGamma:
      j["gamma"] = json_big(spec.gamma);
      break;
    case SequenceSpec::Family::PruferSum:
      j["order_exp"] = spec.order_exp;
      break;
    case SequenceSpec::Family::SplitSum:
      j["torsion_coeff"] = spec.torsion_coeff;
      break;
  }
  return j;
}

Json json_subgroup(const Subgroup& d) {
  return Json{{"ambient", d.ambient().str()}, {"descriptor", d.str()}};
}

Json json_pattern(const SumPattern& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms)
    terms.push_back(Json{{"index", t.index}, {"coeff", json_big(t.coeff)}});
  return Json{{"terms", terms}, {"text", p.str()}};
}

namespace {

const char* tag_name(ConvergenceClass::Tag t) {
  switch (t) {
    case ConvergenceClass::Tag::EventuallyZero: return "eventually-zero";
    case ConvergenceClass::Tag::NullByDecay: return "null-by-decay";
    case ConvergenceClass::Tag::ConvergesToNonzero: return "converges-to-nonzero";
    case ConvergenceClass::Tag::NonConvergent: return "non-convergent";
    case ConvergenceClass::Tag::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace

Json json_convergence(const ConvergenceClass& c) {
  Json j;
  j["tag"] = tag_name(c.tag);
  j["member"] = c.member();
  switch (c.tag) {
    case ConvergenceClass::Tag::EventuallyZero:
      j["zero_from"] = c.zero_from();
      break;
    case ConvergenceClass::Tag::NullByDecay:
      j["decay_scale"] = json_big(c.decay_scale);
      break;
    case ConvergenceClass::Tag::ConvergesToNonzero:
      j["limit"] = c.limit.str();
      j["odd_settle_from"] = c.odd_settle_from;
      break;
    case ConvergenceClass::Tag::NonConvergent:
      j["recurring"] = c.recurring.str();
      j["recur_start"] = c.recur_start;
      j["recur_period"] = c.recur_period;
      break;
    case ConvergenceClass::Tag::Inconclusive:
      j["evaluated_to"] = c.evaluated_to;
      break;
  }
  j["detail"] = c.detail;
  return j;
}

Json json_chain_line(const ChainLine& line) {
  return Json{{"text", line.text},
              {"lhs", json_rational(line.lhs)},
              {"rel", line.rel},
              {"rhs", json_rational(line.rhs)},
              {"holds", line.holds}};
}

Json json_chain_report(const ChainReport& r) {
  Json j;
  j["case"] = to_string(r.case_id);
  j["spec"] = json_spec(r.spec);
  j["context"] = r.context_summary;
  if (r.i0 != 0) {
    j["i0"] = r.i0;
    j["low_even_blocks"] = r.low_even_blocks;
    j["high_even_blocks"] = r.high_even_blocks;
  }
  if (!r.branch.empty()) j["branch"] = r.branch;
  if (!r.skipped_reason.empty()) j["skipped"] = r.skipped_reason;
  Json lines = Json::array();
  for (const ChainLine& line : r.lines) lines.push_back(json_chain_line(line));
  j["lines"] = lines;
  j["holds"] = r.holds;
  return j;
}

Json json_non_membership(const NonMembershipReport& r) {
  Json j;
  j["spec"] = json_spec(r.spec);
  j["target"] = json_element(r.target);
  j["k"] = r.k;
  j["m"] = r.m;
  j["horizon"] = r.horizon;
  j["pattern_count"] = r.pattern_count;
  j["exhaustive_clear"] = r.exhaustive_clear;
  if (r.counterexample) j["counterexample"] = json_pattern(*r.counterexample);
  Json rows = Json::array();
  for (const MinGapRow& row : r.min_gap_by_max_index)
    rows.push_back(Json{{"max_index", row.max_index},
                        {"parity", row.odd ? "odd" : "even"},
                        {"min_gap", json_rational(row.min_gap)}});
  j["min_gap_by_max_index"] = rows;
  j["min_gap_monotone_by_parity"] = r.min_gap_monotone_by_parity();
  if (!r.chain_samples.empty()) {
    Json chains = Json::array();
    for (const ChainReport& c : r.chain_samples) chains.push_back(json_chain_report(c));
    j["chain_samples"] = chains;
  }
  return j;
}

Json json_scan(const ScanResult& r) {
  Json j;
  j["spec"] = json_spec(r.spec);
  j["bound"] = json_big(r.bound);
  j["n_max"] = r.n_max;
  j["window_size"] = r.window.size();
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.window.size(); ++i)
    pts.push_back(Json{{"character", r.window[i].str()},
                       {"class", json_convergence(r.classes[i])}});
  j["characters"] = pts;
  Json acc = Json::array();
  for (const Element& e : r.accepted) acc.push_back(e.str());
  j["accepted"] = acc;
  j["recognized"] = json_subgroup(r.recognized);
  return j;
}

Json json_radical(const RadicalResult& r) {
  Json j;
  j["spec"] = json_spec(r.spec);
  j["scan"] = json_scan(r.scan);
  j["closed"] = json_subgroup(r.closed);
  j["radical"] = json_subgroup(r.radical);
  j["almost_map"] = r.almost_map;
  Json steps = Json::array();
  for (const ProvenanceStep& s : r.provenance)
    steps.push_back(Json{{"stage", s.stage}, {"rule", s.rule}, {"output", s.output}});
  j["provenance"] = steps;
  return j;
}

Json json_audit(const PointwiseAuditReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["witness_search_exhausted"] = r.witness_search_exhausted;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Json json_document(const ReportDocument& doc) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = doc.command;
  j["invocation"] = doc.invocation;
  j["status"] = doc.status;
  j["exit_code"] = doc.exit_code;
  j["elapsed_ms"] = doc.elapsed_ms;
  j["result"] = doc.result;
  return j;
}

}  // namespace tseq
