// fdsc: generate FDSC_n / DSC_n graphs, build and verify star cut families,
// run the exact structure-connectivity oracle and the structural check suite.
//
// Exit codes: 0 success, 1 property violation or mismatch with a proven value,
// 2 usage error, 3 resource cap.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fdsc/fdsc.hpp"

namespace {

using fdsc::Json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kResourceCap = 3;

struct Common {
  int d = 2;
  std::string out;
};

struct GenOptions {
  Common common;
  std::string variant = "fdsc";
  std::string format = "edges";
};

struct CutOptions {
  Common common;
  std::string pattern = "k1";
  int m = 2;
  std::string module;
  std::string u;
  bool verify = false;
};

struct OracleCliOptions {
  Common common;
  std::string check = "structure";
  int m = 1;
  std::string mode = "structure";
  int budget = 3;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t subset_limit = 0;
  std::string sweep = "exhaustive";
  std::uint64_t samples = 1'000'000;
};

struct VerifyOptions {
  Common common;
  std::string family;
};

Json tool_block() { return {{"name", "fdsc"}, {"version", fdsc::kVersion}}; }

void emit(const Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file || !(file << text)) throw std::runtime_error("cannot write " + out);
}

/// Puts tool and config first, then the payload keys.
Json wrap(const Json& config, const Json& payload) {
  Json report{{"tool", tool_block()}, {"config", config}};
  for (auto it = payload.begin(); it != payload.end(); ++it) report[it.key()] = it.value();
  return report;
}

void require_materializable(fdsc::Dim dim, const char* what) {
  if (dim.n() > fdsc::kMaxMaterializedBits) {
    throw fdsc::ResourceCapError(std::string(what) + " needs the graph, but n = " + std::to_string(dim.n()) +
                                 " exceeds the materialization cap n <= " +
                                 std::to_string(fdsc::kMaxMaterializedBits));
  }
}

int run_gen(const GenOptions& o) {
  const fdsc::Dim dim(o.common.d);
  require_materializable(dim, "gen");
  const auto variant = o.variant == "dsc" ? fdsc::Variant::dsc : fdsc::Variant::fdsc;
  const auto format = o.format == "dot" ? fdsc::ExportFormat::dot : fdsc::ExportFormat::edges;
  const auto g = fdsc::build_graph(dim, variant);
  if (o.common.out.empty()) {
    fdsc::export_graph(std::cout, g, format);
  } else {
    std::ofstream file(o.common.out);
    if (!file) throw std::runtime_error("cannot write " + o.common.out);
    fdsc::export_graph(file, g, format);
  }
  return kOk;
}

int run_cut(const CutOptions& o) {
  const fdsc::Dim dim(o.common.d);
  Json config{{"command", "cut"}, {"d", dim.d()}, {"n", dim.n()}, {"variant", "fdsc"}, {"pattern", o.pattern},
              {"verify", o.verify}};
  fdsc::FaultFamily family;
  fdsc::VertexLabel target{0};
  if (o.pattern == "k1m") {
    if (o.m < 2 || o.m > dim.d() + 1) {
      throw fdsc::ParameterError("k1m needs 2 <= m <= d + 1 = " + std::to_string(dim.d() + 1));
    }
    fdsc::ModuleAddress b1{0};
    if (!o.module.empty()) {
      b1 = fdsc::parse_module_address(o.module, dim);
    } else if (!o.u.empty()) {
      const auto u = fdsc::parse_label(o.u, dim);
      b1 = fdsc::module_address(u, dim);
      if (fdsc::inner_address(u, dim) != fdsc::complement(b1, dim).bits) {
        throw fdsc::ParameterError("for k1m, --u must have the form complement(B1).B1");
      }
    }
    auto cut = fdsc::k1m_cut(dim, o.m, b1);
    if (!o.u.empty() && fdsc::parse_label(o.u, dim) != cut.isolated) {
      throw fdsc::ParameterError("--u does not match complement(B1).B1 for the given --module");
    }
    family = std::move(cut.family);
    target = cut.isolated;
    config["m"] = o.m;
    config["module"] = fdsc::format_module_address(b1, dim);
  } else {
    target = o.u.empty() ? fdsc::VertexLabel{0} : fdsc::parse_label(o.u, dim);
    family = o.pattern == "k11" ? fdsc::k11_cut(target, dim) : fdsc::k1_cut(target, dim);
    config["m"] = o.pattern == "k11" ? 1 : 0;
  }
  config["u"] = fdsc::format_label(target, dim);
  if (o.verify) require_materializable(dim, "--verify");

  const auto validation = fdsc::validate_family(family, dim);
  Json payload{{"family", fdsc::to_json(family, dim)},
               {"size", family.size()},
               {"target", fdsc::format_label(target, dim)},
               {"valid", validation.valid}};
  if (!validation.valid) payload["violation"] = validation.violation;
  int rc = validation.valid ? kOk : kViolation;
  if (o.verify) {
    const auto report = fdsc::apply_cut(fdsc::build_graph(dim), family);
    payload["report"] = fdsc::to_json(report, dim);
    payload["target_isolated"] = report.isolated_target == target;
    if (!report.is_cut || report.isolated_target != target) rc = kViolation;
  }
  emit(wrap(config, payload), o.common.out);
  return rc;
}

int run_oracle(const OracleCliOptions& o) {
  const fdsc::Dim dim(o.common.d);
  require_materializable(dim, "oracle");
  const auto g = fdsc::build_graph(dim);
  Json config{{"command", "oracle"}, {"d", dim.d()}, {"n", dim.n()}, {"variant", "fdsc"}, {"check", o.check},
              {"threads", o.threads}};

  if (o.check == "kappa") {
    const int kappa = fdsc::vertex_connectivity(g);
    const int expected = dim.d() + 2;
    emit(wrap(config, Json{{"n", dim.n()}, {"d", dim.d()}, {"kappa", kappa}, {"expected", expected}}), o.common.out);
    return kappa == expected ? kOk : kViolation;
  }
  if (o.check == "a1a2" || o.check == "super") {
    fdsc::SweepOptions sweep;
    sweep.mode = o.sweep == "sample" ? fdsc::BudgetMode::sample : fdsc::BudgetMode::exhaustive;
    sweep.sample_count = o.samples;
    sweep.seed = o.seed;
    sweep.threads = o.threads;
    config["sweep"] = o.sweep;
    config["samples"] = o.samples;
    config["seed"] = o.seed;
    const auto report = o.check == "a1a2" ? fdsc::a1a2_check(g, sweep) : fdsc::super_cut_probe(g, sweep);
    emit(wrap(config, fdsc::to_json(report, dim)), o.common.out);
    return report.holds() ? kOk : kViolation;
  }

  const auto mode = fdsc::parse_family_mode(o.mode);
  fdsc::OracleOptions opts;
  opts.threads = o.threads;
  opts.subset_limit = o.subset_limit;
  config["m"] = o.m;
  config["mode"] = o.mode;
  config["budget"] = o.budget;
  config["seed"] = o.seed;
  config["subset_limit"] = o.subset_limit;
  config["prune_with_connectivity"] = opts.prune_with_connectivity;
  const auto result = fdsc::exact_structure_connectivity(g, o.m, mode, o.budget, opts);
  Json payload = fdsc::to_json(result, dim, o.seed);

  // Consistency with the proven value, where one is claimed and the search
  // could have reached it.
  const auto claimed = fdsc::known_connectivity(dim.d(), o.m, mode);
  bool consistent = true;
  if (claimed && !result.truncated) {
    if (result.value) {
      consistent = *result.value == *claimed;
    } else {
      consistent = *claimed > o.budget;
    }
  }
  payload["known_connectivity"] = claimed ? Json(*claimed) : Json(nullptr);
  payload["consistent"] = consistent;
  emit(wrap(config, payload), o.common.out);
  return consistent ? kOk : kViolation;
}

int run_lemmas(const Common& o) {
  const fdsc::Dim dim(o.d);
  const auto report = fdsc::run_all(dim);
  const Json config{{"command", "lemmas"}, {"d", dim.d()}, {"n", dim.n()}, {"variant", "fdsc"}};
  emit(wrap(config, fdsc::to_json(report)), o.out);
  return report.overall() ? kOk : kViolation;
}

int run_verify(const VerifyOptions& o) {
  const fdsc::Dim dim(o.common.d);
  std::ifstream in(o.family);
  if (!in) throw fdsc::ParameterError("cannot read family file " + o.family);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto family = fdsc::parse_family(buffer.str(), dim);
  const Json config{{"command", "verify"}, {"d", dim.d()}, {"n", dim.n()}, {"variant", "fdsc"}, {"family", o.family}};
  const auto validation = fdsc::validate_family(family, dim);
  Json payload{{"family", fdsc::to_json(family, dim)}, {"size", family.size()}, {"valid", validation.valid}};
  if (!validation.valid) {
    payload["violation"] = validation.violation;
    if (validation.element) payload["violating_element"] = *validation.element;
    emit(wrap(config, payload), o.common.out);
    return kViolation;
  }
  require_materializable(dim, "verify");
  const auto report = fdsc::apply_cut(fdsc::build_graph(dim), family);
  payload["report"] = fdsc::to_json(report, dim);
  emit(wrap(config, payload), o.common.out);
  return report.is_cut ? kOk : kViolation;
}

void add_common(CLI::App* cmd, Common& c, bool d_required = true) {
  auto* opt = cmd->add_option("--d", c.d, "exponent d, n = 2^d")->check(CLI::Range(1, fdsc::kMaxExponent));
  if (d_required) opt->required();
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folded divide-and-swap cube toolkit"};
  app.set_version_flag("--version", std::string(fdsc::kVersion));
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write the graph as an edge list or DOT");
  add_common(gen_cmd, gen.common);
  gen_cmd->add_option("--variant", gen.variant)->check(CLI::IsMember({"fdsc", "dsc"}))->capture_default_str();
  gen_cmd->add_option("--format", gen.format)->check(CLI::IsMember({"edges", "dot"}))->capture_default_str();

  CutOptions cut;
  auto* cut_cmd = app.add_subcommand("cut", "build a K_1, K_{1,1} or K_{1,m} cut family");
  add_common(cut_cmd, cut.common);
  cut_cmd->add_option("--pattern", cut.pattern)->check(CLI::IsMember({"k1", "k11", "k1m"}))->capture_default_str();
  cut_cmd->add_option("--m", cut.m, "star order for k1m")->capture_default_str();
  cut_cmd->add_option("--module", cut.module, "module address B1 for k1m (default all-zero)");
  cut_cmd->add_option("--u", cut.u, "target vertex (default all-zero; k1m: complement(B1).B1)");
  cut_cmd->add_flag("--verify", cut.verify, "apply the family to the built graph");

  OracleCliOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact structure connectivity and removal sweeps");
  add_common(oracle_cmd, oracle.common);
  oracle_cmd->add_option("--check", oracle.check)
      ->check(CLI::IsMember({"structure", "kappa", "a1a2", "super"}))
      ->capture_default_str();
  oracle_cmd->add_option("--m", oracle.m, "star order (0 = K_1)")->check(CLI::NonNegativeNumber)->capture_default_str();
  oracle_cmd->add_option("--mode", oracle.mode)->check(CLI::IsMember({"structure", "substructure"}))->capture_default_str();
  oracle_cmd->add_option("--budget", oracle.budget, "largest family size searched")->check(CLI::PositiveNumber)->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
  oracle_cmd->add_option("--threads", oracle.threads)->check(CLI::Range(1U, 256U))->capture_default_str();
  oracle_cmd->add_option("--subset-limit", oracle.subset_limit, "refuse levels with more subsets (0 = no limit)")
      ->capture_default_str();
  oracle_cmd->add_option("--sweep", oracle.sweep)->check(CLI::IsMember({"exhaustive", "sample"}))->capture_default_str();
  oracle_cmd->add_option("--samples", oracle.samples)->capture_default_str();

  Common lemmas;
  auto* lemmas_cmd = app.add_subcommand("lemmas", "run the structural check suite");
  add_common(lemmas_cmd, lemmas);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "validate and apply a family from a JSON file");
  add_common(verify_cmd, verify.common);
  verify_cmd->add_option("--family", verify.family)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (cut_cmd->parsed()) return run_cut(cut);
    if (oracle_cmd->parsed()) return run_oracle(oracle);
    if (lemmas_cmd->parsed()) return run_lemmas(lemmas);
    if (verify_cmd->parsed()) return run_verify(verify);
  } catch (const fdsc::ResourceCapError& e) {
    std::cerr << "fdsc: " << e.what() << '\n';
    return kResourceCap;
  } catch (const fdsc::ParameterError& e) {
    std::cerr << "fdsc: " << e.what() << '\n';
    return kUsage;
  } catch (const fdsc::ParseError& e) {
    std::cerr << "fdsc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "fdsc: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
