// End-to-end coverage of the command-line binary: every subcommand, the full
// exit-code contract (0 ok / 1 property failed / 2 cut short / 3 bad input),
// and the text, JSON, and CSV output surfaces.
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Invokes the installed binary through /bin/sh, capturing both streams.
// `env_prefix` may carry VAR=value assignments for the child only.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string tag = std::to_string(++counter);
  const std::string out_path = "/tmp/tseq_cli_out_" + tag + ".txt";
  const std::string err_path = "/tmp/tseq_cli_err_" + tag + ".txt";
  std::string cmd;
  if (!env_prefix.empty()) cmd += env_prefix + " ";
  cmd += "\"" TSEQ_CLI_PATH "\" " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

long count_lines(const std::string& text) {
  long n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("cli: term prints exact values in text mode") {
  RunResult r = run_cli("term --family integer-gamma --base 2 --gamma 1 1 2 3 4");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "d1 = 4"));
  CHECK(contains(r.out, "d2 = 2"));
  CHECK(contains(r.out, "d3 = 337"));
  CHECK(contains(r.out, "d4 = 4"));
  CHECK(r.err.empty());
}

TEST_CASE("cli: json envelope carries schema, status, and echoed invocation") {
  RunResult r =
      run_cli("term --family integer-gamma --base 2 --gamma 1 --format json --zero-elapsed 3");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "term");
  CHECK(doc["status"] == "ok");
  CHECK(doc["exit_code"] == 0);
  CHECK(doc["elapsed_ms"] == 0);
  CHECK(doc["invocation"]["family"] == "integer-gamma");
  CHECK(doc["invocation"]["base"] == 2);
  const Json& terms = doc["result"]["terms"];
  REQUIRE(terms.size() == 1);
  CHECK(terms[0]["index"] == 3);
  CHECK(terms[0]["block"] == 2);
  CHECK(terms[0]["parity"] == "odd");
  CHECK(terms[0]["summands"] == 4);
  CHECK(terms[0]["element"]["ambient"] == "Z");
  CHECK(terms[0]["element"]["value"] == "337");
}

TEST_CASE("cli: verify-tseq clears a witnessed target and exits 0") {
  RunResult r = run_cli(
      "verify-tseq --family integer-gamma --base 2 --gamma 1 --target 1 --k 0 "
      "--m 40 --horizon 44");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "no bounded pattern reaches the target"));
  CHECK(contains(r.out, "parity-monotone: yes"));
}

TEST_CASE("cli: verify-tseq derives the witness start when --m is omitted") {
  RunResult r = run_cli(
      "verify-tseq --family integer-gamma --base 2 --gamma 1 --target 1 --k 0 "
      "--format json --zero-elapsed");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["invocation"]["m"] == 40);
  CHECK(doc["invocation"]["horizon"] == 52);
  CHECK(doc["result"]["exhaustive_clear"] == true);
  CHECK(doc["result"]["min_gap_monotone_by_parity"] == true);
}

TEST_CASE("cli: verify-tseq reports a counterexample with exit 1") {
  const std::string args =
      "verify-tseq --family integer-gamma --base 3 --gamma 3 --target 7 --k 0 "
      "--m 1 --horizon 6";
  RunResult text = run_cli(args);
  CHECK(text.code == 1);
  CHECK(contains(text.out, "REACHED by d1"));

  RunResult json = run_cli(args + " --format json --zero-elapsed");
  REQUIRE(json.code == 1);
  Json doc = Json::parse(json.out);
  CHECK(doc["status"] == "property-failed");
  CHECK(doc["exit_code"] == 1);
  CHECK(doc["result"]["exhaustive_clear"] == false);
  CHECK(doc["result"]["counterexample"]["text"] == "d1");
}

TEST_CASE("cli: verify-tseq csv emits exactly the min-gap table") {
  RunResult r = run_cli(
      "verify-tseq --family integer-gamma --base 2 --gamma 1 --target 1 --k 0 "
      "--m 40 --horizon 44 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("max_index,parity,min_gap\n", 0) == 0);
  CHECK(contains(r.out, "40,even,"));
  CHECK(contains(r.out, "41,odd,"));
  CHECK(contains(r.out, "44,even,"));
  CHECK(count_lines(r.out) == 6);  // header + one row per index in [40, 44]
}

TEST_CASE("cli: csv is rejected for commands without a table") {
  RunResult r = run_cli("term --family integer-gamma --base 2 --gamma 1 1 --format csv");
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(contains(r.err, "min-gap table"));
}

TEST_CASE("cli: repeated json runs with --zero-elapsed are byte-identical") {
  const std::string args =
      "verify-tseq --family integer-gamma --base 2 --gamma 1 --target 1 --k 1 "
      "--m 70 --horizon 76 --chain-samples 2 --seed 5 --format json --zero-elapsed";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(b.code == 0);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);

  Json doc = Json::parse(a.out);
  CHECK(doc["result"]["exhaustive_clear"] == true);
  REQUIRE(doc["result"].contains("chain_samples"));
  CHECK(doc["result"]["chain_samples"].size() == 2);
  for (const Json& c : doc["result"]["chain_samples"]) CHECK(c["holds"] == true);
}

TEST_CASE("cli: check-inequalities holds on sampled chains and exits 0") {
  RunResult r = run_cli(
      "check-inequalities --family integer-gamma --base 2 --gamma 1 --target 1 "
      "--k 1 --samples 4 --seed 99");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "4 sampled chains"));
  CHECK(contains(r.out, "failed 0"));
  CHECK(!contains(r.out, "FAIL"));
}

TEST_CASE("cli: check-inequalities --case keeps only the named case") {
  RunResult r = run_cli(
      "check-inequalities --family integer-gamma --base 2 --gamma 1 --target 1 "
      "--k 1 --samples 6 --seed 99 --case eq3 --format json --zero-elapsed");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["failed"] == 0);
  CHECK(doc["result"]["held"].get<long>() >= 1);
  REQUIRE(doc["result"]["reports"].size() >= 1);
  for (const Json& rep : doc["result"]["reports"]) CHECK(rep["case"] == "eq3");
}

TEST_CASE("cli: an injected fault flips one comparison and exits 1") {
  RunResult r = run_cli(
      "check-inequalities --family integer-gamma --base 2 --gamma 1 --target 1 "
      "--k 1 --samples 4 --seed 99 --inject-fault --format json --zero-elapsed");
  REQUIRE(r.code == 1);
  Json doc = Json::parse(r.out);
  CHECK(doc["status"] == "property-failed");
  CHECK(doc["result"]["failed"] == 1);

  RunResult text = run_cli(
      "check-inequalities --family integer-gamma --base 2 --gamma 1 --target 1 "
      "--k 1 --samples 4 --seed 99 --inject-fault");
  CHECK(text.code == 1);
  CHECK(contains(text.out, "FAIL"));
}

TEST_CASE("cli: unknown chain case is rejected with exit 3") {
  RunResult r = run_cli(
      "check-inequalities --family integer-gamma --base 2 --gamma 1 --target 1 --case bogus");
  CHECK(r.code == 3);
  CHECK(contains(r.err, "unknown chain case"));
}

TEST_CASE("cli: the exponent guard cuts work short with exit 2") {
  RunResult text = run_cli("term --family integer-gamma --base 2 --gamma 1 41",
                           "TSEQ_MAX_POWER_BITS=64");
  CHECK(text.code == 2);
  CHECK(contains(text.err, "error:"));

  RunResult json = run_cli("term --family integer-gamma --base 2 --gamma 1 41 --format json",
                           "TSEQ_MAX_POWER_BITS=64");
  REQUIRE(json.code == 2);
  Json doc = Json::parse(json.out);
  CHECK(doc["status"] == "inconclusive");
  CHECK(doc["exit_code"] == 2);
  CHECK(doc["result"].contains("error"));

  // The same invocation is fine under the default budget.
  RunResult ok = run_cli("term --family integer-gamma --base 2 --gamma 1 41");
  CHECK(ok.code == 0);
}

TEST_CASE("cli: malformed invocations exit 3") {
  CHECK(run_cli("term --family integer-gamma --gamma 1 --no-such-flag 1").code == 3);
  CHECK(run_cli("term --family bogus 1").code == 3);
  CHECK(run_cli("verify-tseq --family integer-gamma").code == 3);  // missing --target
  CHECK(run_cli("no-such-subcommand").code == 3);

  // Grammar errors inside a well-formed invocation also map to 3.
  RunResult bad_target = run_cli(
      "verify-tseq --family integer-gamma --base 2 --gamma 1 --target 1/2 "
      "--format json");
  REQUIRE(bad_target.code == 3);
  Json doc = Json::parse(bad_target.out);
  CHECK(doc["status"] == "bad-input");
  CHECK(doc["result"].contains("error"));

  RunResult zero_target =
      run_cli("verify-tseq --family integer-gamma --base 2 --gamma 1 --target 0");
  CHECK(zero_target.code == 3);

  RunResult bad_index = run_cli("term --family integer-gamma --base 2 --gamma 1 0");
  CHECK(bad_index.code == 3);
  CHECK(contains(bad_index.err, "indices start at 1"));
}

TEST_CASE("cli: oversized values are summarized in text and truncated in json") {
  RunResult text = run_cli("term --family integer-gamma --base 2 --gamma 1 47");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "..."));
  CHECK(contains(text.out, "chars)"));

  RunResult json = run_cli(
      "verify-tseq --family integer-gamma --base 2 --gamma 1 --target 1 --k 0 "
      "--m 40 --horizon 52 --format json --zero-elapsed");
  REQUIRE(json.code == 0);
  Json doc = Json::parse(json.out);
  bool saw_plain = false, saw_truncated = false;
  for (const Json& row : doc["result"]["min_gap_by_max_index"]) {
    if (row["max_index"] == 41) {
      CHECK(row["min_gap"].is_string());
      saw_plain = true;
    }
    if (row["max_index"] == 51) {
      REQUIRE(row["min_gap"].is_object());
      CHECK(row["min_gap"]["truncated"] == true);
      CHECK(row["min_gap"]["digits"].get<long>() > 4096);
      CHECK(row["min_gap"]["leading"].get<std::string>().size() == 32);
      CHECK(row["min_gap"]["trailing"].get<std::string>().size() == 32);
      saw_truncated = true;
    }
  }
  CHECK(saw_plain);
  CHECK(saw_truncated);
}

TEST_CASE("cli: scan classifies a dual window and names the accepted subgroup") {
  RunResult circle = run_cli("scan --family integer-gamma --base 3 --gamma 3 --bound 12 --n-max 20");
  CHECK(circle.code == 0);
  CHECK(contains(circle.out, "accepted (3):"));
  CHECK(contains(circle.out, "recognized: Z(3)"));

  RunResult split = run_cli("scan --family split-sum --base 2 --torsion-coeff 1 --bound 8");
  CHECK(split.code == 0);
  CHECK(contains(split.out, "recognized: 0+Z(2^inf)"));

  RunResult json = run_cli(
      "scan --family integer-gamma --base 3 --gamma 3 --bound 12 --n-max 20 "
      "--format json --zero-elapsed");
  REQUIRE(json.code == 0);
  Json doc = Json::parse(json.out);
  CHECK(doc["result"]["recognized"]["descriptor"] == "Z(3)");
  const Json& accepted = doc["result"]["accepted"];
  REQUIRE(accepted.size() == 3);
  bool has_third = false;
  for (const Json& e : accepted) has_third = has_third || e == "1/3";
  CHECK(has_third);
  bool saw_zero_class = false;
  for (const Json& ch : doc["result"]["characters"])
    saw_zero_class = saw_zero_class || ch["class"]["tag"] == "eventually-zero";
  CHECK(saw_zero_class);
}

TEST_CASE("cli: radical derives, checks the catalogue, and audits pointwise") {
  const std::string args =
      "radical --family prufer-sum --base 2 --order-exp 1 --bound 16 --n-max 20 "
      "--audit-bound 8";
  RunResult text = run_cli(args);
  CHECK(text.code == 0);
  CHECK(contains(text.out, "radical: Z(2^1)  [almost-map]"));
  CHECK(contains(text.out, "catalogue: expected Z(2^1) -> agrees"));
  CHECK(contains(text.out, "annihilator audit: holds"));

  RunResult json = run_cli(args + " --format json --zero-elapsed");
  REQUIRE(json.code == 0);
  Json doc = Json::parse(json.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["radical"]["descriptor"] == "Z(2^1)");
  CHECK(doc["result"]["almost_map"] == true);
  CHECK(doc["result"]["registry"]["agrees"] == true);
  CHECK(doc["result"]["audit"]["holds"] == true);
  const Json& steps = doc["result"]["provenance"];
  REQUIRE(steps.size() == 4);
  CHECK(steps[0]["stage"] == "scan");
  CHECK(steps[1]["stage"] == "closure");
  CHECK(steps[2]["stage"] == "annihilator");
  CHECK(steps[3]["stage"] == "finiteness");
  CHECK(steps[2]["output"] == "Z(2^1)");
}

TEST_CASE("cli: registry lists catalogued answers and resolves lookups") {
  RunResult all = run_cli("registry");
  CHECK(all.code == 0);
  CHECK(contains(all.out, "integer-offset-one"));
  CHECK(contains(all.out, "integer-offset-base"));
  CHECK(contains(all.out, "split-torsion-factor"));
  CHECK(contains(all.out, "prufer-cycle"));

  RunResult hit = run_cli("registry --family split-sum --base 7 --torsion-coeff 3");
  CHECK(hit.code == 0);
  CHECK(contains(hit.out, "-> Z(7)+0"));

  RunResult miss = run_cli(
      "registry --family integer-gamma --base 5 --gamma 2 --format json --zero-elapsed");
  REQUIRE(miss.code == 0);
  Json doc = Json::parse(miss.out);
  CHECK(doc["result"]["entries"].size() == 4);
  CHECK(doc["result"]["lookup"].is_null());
}
