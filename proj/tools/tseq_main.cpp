// Command-line front end: exact sequence terms, bounded-pattern
// non-membership verification, inequality-chain evaluation, dual-window
// convergence scans, and radical derivation with a known-answer catalogue.
//
// Exit codes: 0 property held / report produced; 1 a checked property failed;
// 2 the computation was cut short (magnitude guard, truncated precision, or
// unresolved recognition); 3 malformed input.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

#include "tseq/report_json.hpp"

namespace {

using namespace tseq;

struct FamilyOptions {
  std::string family;
  unsigned base = 2;
  std::string gamma = "1";
  unsigned torsion_coeff = 1;
  unsigned order_exp = 1;
};

struct OutputOptions {
  std::string format = "text";
  bool zero_elapsed = false;
};

void add_family_options(CLI::App* cmd, FamilyOptions& fo) {
  cmd->add_option("--family", fo.family, "split-sum | prufer-sum | integer-gamma")
      ->required()
      ->check(CLI::IsMember({"split-sum", "prufer-sum", "integer-gamma"}));
  cmd->add_option("--base", fo.base, "prime p (split-sum/prufer-sum) or base q >= 2");
  cmd->add_option("--gamma", fo.gamma, "integer-gamma offset (integer, >= 1)");
  cmd->add_option("--torsion-coeff", fo.torsion_coeff,
                  "split-sum coefficient of the order-p summand, in [1, p)");
  cmd->add_option("--order-exp", fo.order_exp,
                  "prufer-sum exponent c of the fixed summand 1/p^c");
}

void add_output_options(CLI::App* cmd, OutputOptions& oo) {
  cmd->add_option("--format", oo.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_flag("--zero-elapsed", oo.zero_elapsed, "report elapsed_ms as 0 (stable output)")
      ->group("");
}

SequenceSpec make_spec(const FamilyOptions& fo) {
  if (fo.family == "split-sum") return SequenceSpec::split_sum(fo.base, fo.torsion_coeff);
  if (fo.family == "prufer-sum") return SequenceSpec::prufer_sum(fo.base, fo.order_exp);
  BigInt gamma;
  try {
    gamma = BigInt(fo.gamma);
  } catch (const std::invalid_argument&) {
    throw ParseError("--gamma must be an integer, got '" + fo.gamma + "'");
  }
  return SequenceSpec::integer_gamma(fo.base, gamma);
}

Json echo_family(const FamilyOptions& fo) {
  Json j;
  j["family"] = fo.family;
  j["base"] = fo.base;
  if (fo.family == "integer-gamma") j["gamma"] = fo.gamma;
  if (fo.family == "split-sum") j["torsion_coeff"] = fo.torsion_coeff;
  if (fo.family == "prufer-sum") j["order_exp"] = fo.order_exp;
  return j;
}

// Human-readable rendering of an exact value: full text when short, head,
// tail and digit count when long.  JSON/CSV renderings stay exact.
std::string compact_number(const std::string& dec) {
  if (dec.size() <= 40) return dec;
  return dec.substr(0, 12) + "..." + dec.substr(dec.size() - 8) + " (" +
         std::to_string(dec.size()) + " chars)";
}

std::string compact_number(const Rational& q) { return compact_number(q.get_str()); }

class Timer {
 public:
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int emit(const OutputOptions& oo, ReportDocument doc, const std::string& text,
         const std::optional<std::string>& csv = std::nullopt) {
  if (oo.zero_elapsed) doc.elapsed_ms = 0;
  if (oo.format == "json") {
    std::cout << json_document(doc).dump(2) << "\n";
  } else if (oo.format == "csv") {
    if (!csv) {
      std::cerr << "error: --format csv only applies to the min-gap table of verify-tseq\n";
      return 3;
    }
    std::cout << *csv;
  } else {
    std::cout << text;
  }
  return doc.exit_code;
}

// ---------------------------------------------------------------------------

int run_term(const FamilyOptions& fo, const OutputOptions& oo, const std::vector<long>& indices) {
  Timer timer;
  SequenceSpec spec = make_spec(fo);
  SequenceCache cache(spec);

  Json items = Json::array();
  std::ostringstream text;
  for (long n : indices) {
    if (n < 1) throw PreconditionViolated("term indices start at 1");
    const Element& t = cache.term(n);
    TermIndex ti = TermIndex::of(n);
    items.push_back(Json{{"index", n},
                         {"block", ti.block},
                         {"parity", ti.odd ? "odd" : "even"},
                         {"summands", ti.summand_count()},
                         {"element", json_element(t)}});
    text << "d" << n << " = " << compact_number(t.str()) << "\n";
  }

  ReportDocument doc;
  doc.command = "term";
  doc.invocation = echo_family(fo);
  doc.invocation["indices"] = indices;
  doc.status = "ok";
  doc.exit_code = 0;
  doc.elapsed_ms = timer.ms();
  doc.result = Json{{"spec", json_spec(spec)}, {"terms", items}};
  return emit(oo, doc, text.str());
}

int run_verify(const FamilyOptions& fo, const OutputOptions& oo, const std::string& target_text,
               long k, long m_opt, long horizon_opt, long chain_samples, std::uint64_t seed) {
  Timer timer;
  SequenceSpec spec = make_spec(fo);
  SequenceCache cache(spec);
  Element g = Element::parse(target_text, spec.ambient());

  long m = m_opt > 0 ? m_opt : witness_m(spec, g, k);
  long horizon = horizon_opt > 0 ? horizon_opt : m + 12;
  NonMembershipReport report = check_not_in_A(cache, g, k, m, horizon, chain_samples, seed);

  ReportDocument doc;
  doc.command = "verify-tseq";
  doc.invocation = echo_family(fo);
  doc.invocation["target"] = target_text;
  doc.invocation["k"] = k;
  doc.invocation["m"] = m;
  doc.invocation["horizon"] = horizon;
  doc.invocation["chain_samples"] = chain_samples;
  doc.invocation["seed"] = seed;
  doc.status = report.exhaustive_clear ? "ok" : "property-failed";
  doc.exit_code = report.exhaustive_clear ? 0 : 1;
  doc.elapsed_ms = timer.ms();
  doc.result = json_non_membership(report);

  std::ostringstream text;
  text << spec.str() << ": target " << g.str() << ", k=" << k << ", indices in [" << m << ", "
       << horizon << "]\n";
  text << "patterns checked: " << report.pattern_count << "\n";
  if (report.exhaustive_clear) {
    text << "no bounded pattern reaches the target\n";
  } else {
    text << "REACHED by " << report.counterexample->str() << "\n";
  }
  text << "min gap per largest index (parity-monotone: "
       << (report.min_gap_monotone_by_parity() ? "yes" : "no") << ")\n";
  for (const MinGapRow& row : report.min_gap_by_max_index)
    text << "  max_index " << row.max_index << " (" << (row.odd ? "odd" : "even")
         << "): " << compact_number(row.min_gap) << "\n";
  for (const ChainReport& c : report.chain_samples)
    text << "chain " << to_string(c.case_id) << " [" << c.context_summary << "]: "
         << (c.skipped_reason.empty() ? (c.holds ? "holds" : "FAILS") : "skipped") << "\n";

  std::ostringstream csv;
  csv << "max_index,parity,min_gap\n";
  for (const MinGapRow& row : report.min_gap_by_max_index)
    csv << row.max_index << "," << (row.odd ? "odd" : "even") << "," << row.min_gap.get_str()
        << "\n";

  return emit(oo, doc, text.str(), csv.str());
}

int run_chains(const FamilyOptions& fo, const OutputOptions& oo, const std::string& target_text,
               long k, long samples, std::uint64_t seed, const std::string& case_filter,
               bool inject_fault) {
  Timer timer;
  SequenceSpec spec = make_spec(fo);
  SequenceCache cache(spec);
  Element g = Element::parse(target_text, spec.ambient());

  std::vector<ChainReport> reports = sample_chain_suite(cache, g, k, samples, seed);
  if (!case_filter.empty()) {
    auto wanted = chain_case_from_string(case_filter);
    if (!wanted) throw ParseError("unknown chain case '" + case_filter + "'");
    std::vector<ChainReport> kept;
    for (ChainReport& r : reports)
      if (r.case_id == *wanted) kept.push_back(std::move(r));
    reports = std::move(kept);
  }
  if (inject_fault) {
    for (ChainReport& r : reports) {
      if (!r.skipped_reason.empty() || r.lines.empty()) continue;
      r.lines.front().holds = !r.lines.front().holds;
      r.holds = true;
      for (const ChainLine& line : r.lines) r.holds = r.holds && line.holds;
      break;
    }
  }

  long failed = 0, skipped = 0, held = 0;
  for (const ChainReport& r : reports) {
    if (!r.skipped_reason.empty())
      ++skipped;
    else if (r.holds)
      ++held;
    else
      ++failed;
  }

  ReportDocument doc;
  doc.command = "check-inequalities";
  doc.invocation = echo_family(fo);
  doc.invocation["target"] = target_text;
  doc.invocation["k"] = k;
  doc.invocation["samples"] = samples;
  doc.invocation["seed"] = seed;
  if (!case_filter.empty()) doc.invocation["case"] = case_filter;
  if (failed > 0) {
    doc.status = "property-failed";
    doc.exit_code = 1;
  } else if (held == 0 && skipped > 0) {
    doc.status = "inconclusive";
    doc.exit_code = 2;
  } else {
    doc.status = "ok";
    doc.exit_code = 0;
  }
  doc.elapsed_ms = timer.ms();
  Json arr = Json::array();
  for (const ChainReport& r : reports) arr.push_back(json_chain_report(r));
  doc.result = Json{{"spec", json_spec(spec)},
                    {"held", held},
                    {"failed", failed},
                    {"skipped", skipped},
                    {"reports", arr}};

  std::ostringstream text;
  text << spec.str() << ": " << reports.size() << " sampled chains (k=" << k << ", seed=" << seed
       << ")\n";
  for (const ChainReport& r : reports) {
    text << to_string(r.case_id);
    if (!r.branch.empty()) text << " [" << r.branch << "]";
    text << ": " << r.context_summary << "\n";
    if (!r.skipped_reason.empty()) {
      text << "  skipped: " << r.skipped_reason << "\n";
      continue;
    }
    for (const ChainLine& line : r.lines)
      text << "  " << (line.holds ? "ok  " : "FAIL") << "  " << line.text << "\n";
  }
  text << "held " << held << ", failed " << failed << ", skipped " << skipped << "\n";
  return emit(oo, doc, text.str());
}

int run_scan(const FamilyOptions& fo, const OutputOptions& oo, long bound, long n_max) {
  Timer timer;
  SequenceSpec spec = make_spec(fo);
  ScanResult scan = scan_s_u(spec, BigInt(bound), n_max);

  ReportDocument doc;
  doc.command = "scan";
  doc.invocation = echo_family(fo);
  doc.invocation["bound"] = bound;
  doc.invocation["n_max"] = n_max;
  doc.status = "ok";
  doc.exit_code = 0;
  doc.elapsed_ms = timer.ms();
  doc.result = json_scan(scan);

  std::ostringstream text;
  text << spec.str() << ": scanned " << scan.window.size() << " characters up to " << bound
       << "\n";
  text << "accepted (" << scan.accepted.size() << "):";
  for (const Element& e : scan.accepted) text << " " << e.str();
  text << "\nrecognized: " << scan.recognized.str() << "\n";
  return emit(oo, doc, text.str());
}

int run_radical(const FamilyOptions& fo, const OutputOptions& oo, long bound, long n_max,
                long audit_bound) {
  Timer timer;
  SequenceSpec spec = make_spec(fo);
  RadicalResult rad = compute_radical(spec, BigInt(bound), n_max);

  std::optional<Subgroup> expected = registry_lookup(spec);
  bool agrees = !expected || *expected == rad.radical;

  std::optional<PointwiseAuditReport> audit;
  if (audit_bound > 0) audit = verify_annihilator_pointwise(rad.closed, BigInt(audit_bound));

  ReportDocument doc;
  doc.command = "radical";
  doc.invocation = echo_family(fo);
  doc.invocation["bound"] = bound;
  doc.invocation["n_max"] = n_max;
  if (audit_bound > 0) doc.invocation["audit_bound"] = audit_bound;
  bool audit_ok = !audit || audit->holds;
  doc.status = agrees && audit_ok ? "ok" : "property-failed";
  doc.exit_code = agrees && audit_ok ? 0 : 1;
  doc.elapsed_ms = timer.ms();
  doc.result = json_radical(rad);
  if (expected) {
    doc.result["registry"] =
        Json{{"expected", json_subgroup(*expected)}, {"agrees", agrees}};
  }
  if (audit) doc.result["audit"] = json_audit(*audit);

  std::ostringstream text;
  text << spec.str() << "\n";
  for (const ProvenanceStep& s : rad.provenance)
    text << "  " << s.stage << ": " << s.output << "   (" << s.rule << ")\n";
  text << "radical: " << rad.radical.str() << (rad.almost_map ? "  [almost-map]" : "") << "\n";
  if (expected)
    text << "catalogue: expected " << expected->str() << " -> "
         << (agrees ? "agrees" : "DISAGREES") << "\n";
  if (audit)
    text << "annihilator audit: " << (audit->holds ? "holds" : "FAILS")
         << (audit->detail.empty() ? "" : " (" + audit->detail + ")") << "\n";
  return emit(oo, doc, text.str());
}

int run_registry(const OutputOptions& oo, const FamilyOptions& fo, bool have_family) {
  Timer timer;
  ReportDocument doc;
  doc.command = "registry";
  doc.invocation = have_family ? echo_family(fo) : Json::object();
  doc.status = "ok";
  doc.exit_code = 0;

  Json entries = Json::array();
  std::ostringstream text;
  for (const RegistryEntry& e : registry()) {
    entries.push_back(Json{{"name", e.name}, {"statement", e.statement}});
    text << e.name << ": " << e.statement << "\n";
  }
  doc.result = Json{{"entries", entries}};

  if (have_family) {
    SequenceSpec spec = make_spec(fo);
    std::optional<Subgroup> hit = registry_lookup(spec);
    doc.result["lookup"] = hit ? json_subgroup(*hit) : Json(nullptr);
    text << spec.str() << " -> " << (hit ? hit->str() : std::string("(no catalogued answer)"))
         << "\n";
  }
  doc.elapsed_ms = timer.ms();
  return emit(oo, doc, text.str());
}

// Error-path document: same envelope, result carries the failure detail.
int emit_error(const OutputOptions& oo, const std::string& command, const std::string& status,
               int code, const std::string& message, Json extra = Json::object()) {
  ReportDocument doc;
  doc.command = command;
  doc.invocation = Json::object();
  doc.status = status;
  doc.exit_code = code;
  doc.elapsed_ms = 0;
  extra["error"] = message;
  doc.result = extra;
  if (oo.format == "json") {
    std::cout << json_document(doc).dump(2) << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  tseq::ExponentGuard::configure_from_environment();

  CLI::App app{
      "exact arithmetic for three interleaved power/tail sequence families: "
      "terms, bounded-pattern non-membership, inequality chains, dual "
      "convergence scans, and radical derivation"};
  app.require_subcommand(1);

  FamilyOptions fo;
  OutputOptions oo;

  // term
  auto* term = app.add_subcommand("term", "print exact sequence terms");
  std::vector<long> indices;
  add_family_options(term, fo);
  add_output_options(term, oo);
  term->add_option("indices", indices, "1-based indices")->required();

  // verify-tseq
  auto* verify = app.add_subcommand(
      "verify-tseq", "certify that no bounded pattern over tail indices reaches the target");
  std::string target;
  long k = 0, m_opt = 0, horizon_opt = 0, chain_samples = 0;
  std::uint64_t seed = 1;
  add_family_options(verify, fo);
  add_output_options(verify, oo);
  verify->add_option("--target", target, "target element (ambient grammar)")->required();
  verify->add_option("--k", k, "weight bound: patterns use total weight <= k+1");
  verify->add_option("--m", m_opt, "start index (default: derived witness start)");
  verify->add_option("--horizon", horizon_opt, "largest index enumerated (default m+12)");
  verify->add_option("--chain-samples", chain_samples, "also evaluate this many sampled chains");
  verify->add_option("--seed", seed, "sampler seed");

  // check-inequalities
  auto* chains = app.add_subcommand("check-inequalities",
                                    "evaluate every comparison of sampled inequality chains");
  long samples = 8;
  std::string case_filter;
  bool inject_fault = false;
  add_family_options(chains, fo);
  add_output_options(chains, oo);
  chains->add_option("--target", target, "target element (ambient grammar)")->required();
  chains->add_option("--k", k, "weight bound");
  chains->add_option("--samples", samples, "number of sampled pattern shapes");
  chains->add_option("--seed", seed, "sampler seed");
  chains->add_option("--case", case_filter, "only report this chain case");
  chains->add_flag("--inject-fault", inject_fault, "flip one evaluated comparison")->group("");

  // scan
  auto* scan = app.add_subcommand("scan",
                                  "classify every dual character in a window and recognize "
                                  "the members");
  long bound = 32, n_max = 40;
  add_family_options(scan, fo);
  add_output_options(scan, oo);
  scan->add_option("--bound", bound, "window size (denominator or magnitude bound)");
  scan->add_option("--n-max", n_max, "re-check certificates on indices up to this");

  // radical
  auto* radical = app.add_subcommand("radical",
                                     "scan, close, annihilate: derive the common kernel and "
                                     "compare with the catalogue");
  long audit_bound = 0;
  add_family_options(radical, fo);
  add_output_options(radical, oo);
  radical->add_option("--bound", bound, "dual window size for the scan");
  radical->add_option("--n-max", n_max, "certificate re-check depth");
  radical->add_option("--audit-bound", audit_bound,
                      "also audit the annihilator pointwise on this window");

  // registry
  auto* reg = app.add_subcommand("registry", "list the catalogued radicals");
  reg->add_option("--family", fo.family, "optional: look up one family")
      ->check(CLI::IsMember({"split-sum", "prufer-sum", "integer-gamma"}));
  reg->add_option("--base", fo.base, "prime p or base q");
  reg->add_option("--gamma", fo.gamma, "integer-gamma offset");
  reg->add_option("--torsion-coeff", fo.torsion_coeff, "split-sum torsion coefficient");
  reg->add_option("--order-exp", fo.order_exp, "prufer-sum exponent");
  add_output_options(reg, oo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (term->parsed()) return run_term(fo, oo, indices);
    if (verify->parsed())
      return run_verify(fo, oo, target, k, m_opt, horizon_opt, chain_samples, seed);
    if (chains->parsed())
      return run_chains(fo, oo, target, k, samples, seed, case_filter, inject_fault);
    if (scan->parsed()) return run_scan(fo, oo, bound, n_max);
    if (radical->parsed()) return run_radical(fo, oo, bound, n_max, audit_bound);
    if (reg->parsed()) return run_registry(oo, fo, !fo.family.empty());
    return 3;
  } catch (const tseq::RecognitionAmbiguous& e) {
    Json extra;
    extra["accepted"] = e.accepted();
    extra["candidates"] = e.candidates();
    return emit_error(oo, command, "inconclusive", 2, e.what(), extra);
  } catch (const tseq::RecognitionFailed& e) {
    Json extra;
    extra["accepted"] = e.accepted();
    return emit_error(oo, command, "inconclusive", 2, e.what(), extra);
  } catch (const tseq::ExponentTooLarge& e) {
    return emit_error(oo, command, "inconclusive", 2, e.what());
  } catch (const tseq::PrecisionExhausted& e) {
    return emit_error(oo, command, "inconclusive", 2, e.what());
  } catch (const tseq::ParseError& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::PreconditionViolated& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::ZeroTarget& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::MismatchedAmbient& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::UnsupportedAmbient& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::UnsupportedCharacter& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::NoValidGap& e) {
    return emit_error(oo, command, "bad-input", 3, e.what());
  } catch (const tseq::Error& e) {
    return emit_error(oo, command, "property-failed", 1, e.what());
  } catch (const std::exception& e) {
    return emit_error(oo, command, "property-failed", 1, e.what());
  }
}
