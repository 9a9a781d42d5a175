#pragma once

#include <json.hpp>

#include "tseq/radical.hpp"
#include "tseq/verify.hpp"

namespace tseq {

using Json = nlohmann::ordered_json;

/// All reports share schema_version 1: {schema_version, command, invocation,
/// status, exit_code, elapsed_ms, result}.  Exact values are serialized as
/// decimal strings, never as JSON numbers; integers longer than
/// big_digit_limit() digits become {digits, leading, trailing, truncated}.
inline constexpr std::size_t kBigDigitLimit = 4096;

Json json_big(const BigInt& n);
Json json_rational(const Rational& q);
Json json_circle(const CircleRational& x);
Json json_element(const Element& e);
Json json_spec(const SequenceSpec& spec);
Json json_subgroup(const Subgroup& d);
Json json_pattern(const SumPattern& p);
Json json_convergence(const ConvergenceClass& c);
Json json_chain_line(const ChainLine& line);
Json json_chain_report(const ChainReport& r);
Json json_non_membership(const NonMembershipReport& r);
Json json_scan(const ScanResult& r);
Json json_radical(const RadicalResult& r);
Json json_audit(const PointwiseAuditReport& r);

struct ReportDocument {
  std::string command;    // CLI subcommand name
  Json invocation;        // echo of the parsed options
  std::string status;     // "ok" | "property-failed" | "inconclusive" | "bad-input"
  int exit_code = 0;
  long elapsed_ms = 0;
  Json result;
};

Json json_document(const ReportDocument& doc);

}  // namespace tseq
