#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tseq/charscan.hpp"

namespace tseq {

/// One stage of the scan -> closure -> annihilator derivation, with the rule
/// that was applied and its symbolic output.
struct ProvenanceStep {
  std::string stage;   // "scan", "closure", "annihilator", "finiteness"
  std::string rule;    // human-readable rule that produced the output
  std::string output;  // canonical descriptor text (or verdict)
};

/// n(G, u): the common kernel of all characters that the sequence sends to 0.
/// Derived as the annihilator of the closure of the scanned dual subgroup.
struct RadicalResult {
  SequenceSpec spec;
  ScanResult scan;
  Subgroup closed = Subgroup::zero(Ambient::integers());
  Subgroup radical = Subgroup::zero(Ambient::integers());
  bool almost_map = false;  // radical finite and nontrivial?
  std::vector<ProvenanceStep> provenance;
};

/// Runs the full derivation for one family instance.  `bound` sizes the dual
/// window handed to scan_s_u; n_max bounds the per-character certificate
/// re-check (it never decides membership).
RadicalResult compute_radical(const SequenceSpec& spec, const BigInt& bound, long n_max = 40);

/// True iff the subgroup is finite and nontrivial: a finite cycle in T or in
/// Z(p^inf), or a split product of the full torsion factor with 0.
bool almost_map_check(const Subgroup& subgroup);

/// A catalogued answer: a family pattern together with the radical it must
/// produce.  `matches` tests a concrete spec, `expected` instantiates the
/// answer for it.
struct RegistryEntry {
  std::string name;
  std::string statement;
  std::function<bool(const SequenceSpec&)> matches;
  std::function<Subgroup(const SequenceSpec&)> expected;
};

/// The catalogue of known radicals, one entry per family pattern.
const std::vector<RegistryEntry>& registry();

/// The catalogued radical for a spec, if any pattern matches.
std::optional<Subgroup> registry_lookup(const SequenceSpec& spec);

}  // namespace tseq
