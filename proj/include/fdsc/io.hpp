#pragma once

// JSON forms of families and reports. Labels are binary strings, s_1 first.
// Key order is fixed (ordered_json) so reports diff cleanly across runs.

#include <string>
#include <vector>

#include <json.hpp>

#include "fdsc/cuts.hpp"
#include "fdsc/error.hpp"
#include "fdsc/label.hpp"
#include "fdsc/lemmas.hpp"
#include "fdsc/oracle.hpp"

namespace fdsc {

using Json = nlohmann::ordered_json;

inline Json label_list_json(const std::vector<VertexLabel>& labels, Dim dim) {
  Json out = Json::array();
  for (auto v : labels) out.push_back(format_label(v, dim));
  return out;
}

inline Json to_json(const FaultFamily& fam, Dim dim) {
  Json elements = Json::array();
  for (const auto& star : fam.elements) {
    elements.push_back({{"center", format_label(star.center, dim)}, {"leaves", label_list_json(star.leaves, dim)}});
  }
  return {{"mode", to_string(fam.mode)}, {"m", fam.pattern_m}, {"elements", std::move(elements)}};
}

/// Reads the family form. Shape and label errors throw ParseError; star
/// invariants are left to validate_family.
inline FaultFamily family_from_json(const Json& j, Dim dim) {
  auto field = [&](const Json& obj, const char* key) -> const Json& {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("family JSON is missing \"") + key + "\"");
    return obj.at(key);
  };
  FaultFamily fam;
  const Json& mode = field(j, "mode");
  if (!mode.is_string()) throw ParseError("\"mode\" must be a string");
  fam.mode = parse_family_mode(mode.get<std::string>());
  const Json& m = field(j, "m");
  if (!m.is_number_integer()) throw ParseError("\"m\" must be an integer");
  fam.pattern_m = m.get<int>();
  const Json& elements = field(j, "elements");
  if (!elements.is_array()) throw ParseError("\"elements\" must be an array");
  for (const auto& e : elements) {
    const Json& center = field(e, "center");
    const Json& leaves = field(e, "leaves");
    if (!center.is_string() || !leaves.is_array()) throw ParseError("element needs a string center and a leaves array");
    Star star{parse_label(center.get<std::string>(), dim), {}};
    for (const auto& leaf : leaves) {
      if (!leaf.is_string()) throw ParseError("leaves must be strings");
      star.leaves.push_back(parse_label(leaf.get<std::string>(), dim));
    }
    fam.elements.push_back(std::move(star));
  }
  return fam;
}

inline FaultFamily parse_family(const std::string& text, Dim dim) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("family file is not valid JSON: ") + e.what(), e.byte);
  }
  return family_from_json(j, dim);
}

inline Json to_json(const ComponentCensus& c) {
  return {{"component_count", c.component_count},
          {"surviving_vertices", c.surviving_count()},
          {"component_sizes", c.component_sizes}};
}

inline Json to_json(const CutReport& r, Dim dim) {
  Json out{{"size", r.family.size()},
           {"removed_vertex_count", r.removed_vertex_count},
           {"is_cut", r.is_cut},
           {"census", to_json(r.census)}};
  out["census"]["smallest_component"] = label_list_json(r.census.smallest_component_members, dim);
  out["isolated"] = r.isolated_target ? Json(format_label(*r.isolated_target, dim)) : Json(nullptr);
  return out;
}

inline Json to_json(const OracleResult& r, Dim dim, std::uint64_t seed) {
  Json out{{"n", r.n},
           {"d", r.d},
           {"m", r.pattern_m},
           {"mode", to_string(r.mode)},
           {"value", r.value ? Json(*r.value) : Json(nullptr)},
           {"lower_bound", r.proven_lower_bound},
           {"certificate", r.certificate ? to_json(*r.certificate, dim) : Json(nullptr)},
           {"candidates", r.candidate_count},
           {"examined", r.examined()},
           {"seed", seed},
           {"elapsed_ms", r.elapsed_ms}};
  out["raw_candidates"] = r.raw_candidate_count;
  out["examined_per_size"] = r.examined_per_size;
  out["pruned_below_kappa"] = r.pruned;
  out["prune_threshold"] = r.prune_below;
  out["truncated"] = r.truncated;
  if (r.truncated) out["truncation_reason"] = r.truncation_reason;
  return out;
}

inline Json to_json(const SweepReport& r, Dim dim) {
  Json out{{"check", r.name},
           {"n", dim.n()},
           {"d", dim.d()},
           {"budget", to_string(r.mode)},
           {"max_size", r.max_size},
           {"examined", r.examined},
           {"skipped_below_kappa", r.skipped_below_kappa},
           {"kappa", r.kappa_used},
           {"violations", r.violations},
           {"holds", r.holds()},
           {"seed", r.seed},
           {"generator", r.generator},
           {"elapsed_ms", r.elapsed_ms}};
  if (r.counterexample) {
    Json edges = Json::array();
    for (const auto& [a, b] : r.counterexample->a2) edges.push_back({format_label(a, dim), format_label(b, dim)});
    out["counterexample"] = {{"vertices", label_list_json(r.counterexample->a1, dim)}, {"edges", std::move(edges)}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

/// `with_timing = false` drops elapsed fields, giving byte-identical output
/// for identical inputs.
inline Json to_json(const LemmaReport& r, bool with_timing = true) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json item{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
    if (with_timing) item["elapsed_ms"] = c.elapsed_ms;
    checks.push_back(std::move(item));
  }
  return {{"n", r.n}, {"d", r.d}, {"checks", std::move(checks)}, {"overall", r.overall()}};
}

}  // namespace fdsc
