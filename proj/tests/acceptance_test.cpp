// Acceptance criteria runner: one PASS/FAIL line per criterion.
//
//   acceptance_test --tier fast   criteria 1-4, 5 (single elements), 6, 8, 9
//   acceptance_test --tier slow   criteria 5 (families of <= 3 edges) and 7
//
// A criterion that fails for a documented, analysed reason is listed in
// kKnownFailures; it still prints FAIL, but only an unexpected outcome (a new
// failure, or a known failure that starts passing) makes the exit status
// nonzero.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fdsc/fdsc.hpp"

using namespace fdsc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> body;
};

struct KnownFailure {
  std::string id;
  std::string reason;
};

// The no-common-neighbor property is false at n = 4: B.B and complement(B).B
// are adjacent via the 2-swap and share their f/e1 neighbors in every module.
const std::vector<KnownFailure> kKnownFailures = {
    {"6", "at n = 4 every module's apex pair has a common neighbor (e.g. 1000 for 0000, 1100)"},
};

unsigned worker_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

Outcome census() {
  Outcome o;
  std::vector<std::string> parts;
  for (int d = 1; d <= 4; ++d) {
    const Dim dim(d);
    const Graph g = build_graph(dim);
    const std::size_t v = std::size_t{1} << dim.n();
    const std::size_t e = v / 2 * static_cast<std::size_t>(d + 2);
    bool regular = true;
    for (Vertex x = 0; x < g.vertex_count() && regular; ++x) {
      const auto nbrs = g.neighbors(x);
      regular = nbrs.size() == static_cast<std::size_t>(d + 2) && std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end() &&
                std::find(nbrs.begin(), nbrs.end(), x) == nbrs.end();
      for (Vertex y : nbrs) regular = regular && g.has_edge(y, x);
    }
    const bool ok = g.vertex_count() == v && g.edge_count() == e && regular;
    o.pass = o.pass && ok;
    parts.push_back("n=" + std::to_string(dim.n()) + " |V|=" + std::to_string(g.vertex_count()) +
                    " |E|=" + std::to_string(g.edge_count()) + (regular ? " regular" : " NOT regular"));
  }
  o.detail = join(parts);
  return o;
}

Outcome kappa_k1() {
  Outcome o;
  std::vector<std::string> parts;
  for (int d = 1; d <= 3; ++d) {
    const int k = vertex_connectivity(build_graph(Dim(d)));
    o.pass = o.pass && k == d + 2;
    parts.push_back("n=" + std::to_string(1 << d) + " kappa=" + std::to_string(k) + " (want " + std::to_string(d + 2) + ")");
  }
  o.detail = join(parts);
  return o;
}

Outcome exact_small() {
  struct Case {
    int d;
    int m;
    FamilyMode mode;
    int want;
  };
  const std::vector<Case> cases = {
      {1, 1, FamilyMode::structure, 2},    {1, 2, FamilyMode::structure, 1},    {2, 1, FamilyMode::structure, 2},
      {2, 1, FamilyMode::substructure, 2}, {2, 2, FamilyMode::structure, 2},    {2, 2, FamilyMode::substructure, 2},
      {2, 3, FamilyMode::structure, 2},    {2, 3, FamilyMode::substructure, 2}, {2, 4, FamilyMode::substructure, 2},
  };
  Outcome o;
  std::vector<std::string> parts;
  for (const auto& c : cases) {
    const auto r = exact_structure_connectivity(build_graph(Dim(c.d)), c.m, c.mode, 3);
    const bool ok = r.value == c.want && !r.truncated;
    o.pass = o.pass && ok;
    parts.push_back("n=" + std::to_string(1 << c.d) + (c.mode == FamilyMode::structure ? " k" : " ks") + "(K1," +
                    std::to_string(c.m) + ")=" + (r.value ? std::to_string(*r.value) : "none") + (ok ? "" : " (want " + std::to_string(c.want) + ")"));
  }
  o.detail = join(parts);
  return o;
}

Outcome fdsc8_upper_bounds() {
  const Dim dim(3);
  const Graph g = build_graph(dim);
  Outcome o;
  std::vector<std::string> parts;
  const VertexLabel zero{0};
  const auto k11 = apply_cut(g, k11_cut(zero, dim));
  const bool k11_ok = k11.family.size() == 4 && k11.is_cut && k11.isolated_target == zero;
  o.pass = k11_ok;
  parts.push_back(std::string("k11_cut size 4 ") + (k11_ok ? "isolates 00000000" : "FAILED"));
  for (int m = 2; m <= 4; ++m) {
    const auto cut = k1m_cut(dim, m, ModuleAddress{0});
    const auto r = apply_cut(g, cut.family);
    const bool ok = cut.family.size() == 2 && r.is_cut && r.isolated_target == cut.isolated;
    o.pass = o.pass && ok;
    parts.push_back("k1m_cut m=" + std::to_string(m) + " size " + std::to_string(cut.family.size()) +
                    (ok ? " isolates " + format_label(cut.isolated, dim) : " FAILED"));
  }
  o.detail = join(parts);
  return o;
}

Outcome fdsc8_single_elements() {
  const Graph g = build_graph(Dim(3));
  Outcome o;
  std::vector<std::string> parts;
  OracleOptions opts;
  opts.threads = worker_threads();
  for (int m = 1; m <= 5; ++m) {
    const auto r = exact_structure_connectivity(g, m, FamilyMode::substructure, 1, opts);
    const bool ok = !r.value && r.examined() == r.candidate_count && r.proven_lower_bound == 2;
    o.pass = o.pass && ok;
    parts.push_back("m=" + std::to_string(m) + ": " + std::to_string(r.examined()) + "/" +
                    std::to_string(r.candidate_count) + " elements, " + (ok ? "none disconnects" : "CUT FOUND"));
  }
  o.detail = join(parts) + "; so ks(FDSC_8;K1,m) >= 2";
  return o;
}

Outcome fdsc8_k11_families() {
  const Graph g = build_graph(Dim(3));
  OracleOptions opts;
  opts.threads = worker_threads();
  const auto r = exact_structure_connectivity(g, 1, FamilyMode::substructure, 3, opts);
  Outcome o;
  std::uint64_t expected = 0;
  for (std::uint64_t t = 1; t <= 3; ++t) expected += binomial(r.candidate_count, t);
  o.pass = !r.value && !r.truncated && r.proven_lower_bound == 4 && r.examined() == expected;
  o.detail = std::to_string(r.candidate_count) + " K1,1-substructure candidates, " + std::to_string(r.examined()) +
             " families of size <= 3 accounted for (" + std::to_string(r.pruned) +
             " skipped: vertex union < kappa = " + std::to_string(r.prune_below) + "), " +
             (r.value ? "CUT FOUND" : "none disconnects") + "; ks(FDSC_8;K1,1) >= " + std::to_string(r.proven_lower_bound);
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::vector<std::string> parts;
  for (int d = 2; d <= 4; ++d) {
    const auto report = run_all(Dim(d));
    std::size_t passed = 0;
    std::vector<std::string> failed;
    for (const auto& c : report.checks) {
      if (c.status == CheckStatus::pass) ++passed;
      if (c.status != CheckStatus::pass) failed.push_back(c.name + " [" + to_string(c.status) + ": " + c.detail + "]");
    }
    o.pass = o.pass && report.overall() && failed.empty();
    parts.push_back("n=" + std::to_string(report.n) + " " + std::to_string(passed) + "/" + std::to_string(report.checks.size()) +
                    " pass" + (failed.empty() ? "" : ", " + join(failed)));
  }
  o.detail = join(parts);
  return o;
}

Outcome a1a2_removal() {
  Outcome o;
  SweepOptions exhaustive;
  exhaustive.threads = worker_threads();
  const auto small = a1a2_check(build_graph(Dim(3)), exhaustive);
  SweepOptions sample;
  sample.mode = BudgetMode::sample;
  sample.sample_count = 1'000'000;
  sample.seed = 0;
  sample.threads = worker_threads();
  const auto large = a1a2_check(build_graph(Dim(4)), sample);
  o.pass = small.holds() && large.holds() && large.examined >= 1'000'000;
  o.detail = "FDSC_8 exhaustive |A1|+|A2|<=3: " + std::to_string(small.examined) + " specs (" +
             std::to_string(small.skipped_below_kappa) + " below kappa), " + std::to_string(small.violations) +
             " disconnections; FDSC_16 sampled (seed 0): " + std::to_string(large.examined) + " specs, " +
             std::to_string(large.violations) + " disconnections";
  return o;
}

Outcome label_scaling() {
  Outcome o;
  std::vector<std::string> parts;
  for (int d = 2; d <= 6; ++d) {
    const Dim dim(d);
    bool ok = true;
    auto covers = [&](const FaultFamily& fam, VertexLabel u) {
      const auto removed = fam.removed_vertices();
      const std::set<VertexLabel> r(removed.begin(), removed.end());
      if (r.count(u)) return false;
      for (const auto& nb : neighbor_set(u, dim)) {
        if (!r.count(nb.label)) return false;
      }
      return true;
    };
    const auto k11 = k11_cut(VertexLabel{0}, dim);
    ok = ok && k11.size() == static_cast<std::size_t>(d + 1) && validate_family(k11, dim).valid && covers(k11, VertexLabel{0});
    for (int m = 2; m <= d + 1; ++m) {
      const auto cut = k1m_cut(dim, m, ModuleAddress{0});
      ok = ok && cut.family.size() == static_cast<std::size_t>(d / 2 + 1) && validate_family(cut.family, dim).valid &&
           covers(cut.family, cut.isolated);
    }
    o.pass = o.pass && ok;
    parts.push_back("d=" + std::to_string(d) + (ok ? " ok" : " FAILED"));
  }
  o.detail = join(parts) + " (k1m size floor(d/2)+1 for every m, k11 size d+1, stars adjacency-valid, N(u) covered)";
  return o;
}

Outcome monotonicity() {
  Outcome o;
  std::vector<std::string> parts;
  for (int d = 1; d <= 2; ++d) {
    const Graph g = build_graph(Dim(d));
    std::set<int> structure_values;
    for (int m = 0; m <= d + 2; ++m) {
      const auto s = exact_structure_connectivity(g, m, FamilyMode::structure, 4);
      const auto sub = exact_structure_connectivity(g, m, FamilyMode::substructure, 4);
      if (s.value && sub.value && *sub.value > *s.value) {
        o.pass = false;
        parts.push_back("n=" + std::to_string(1 << d) + " m=" + std::to_string(m) + " ks > k");
      }
      if (m >= 2 && m <= d + 1 && s.value) structure_values.insert(*s.value);
    }
    const bool flat = structure_values.size() == 1;
    o.pass = o.pass && flat;
    parts.push_back("n=" + std::to_string(1 << d) + " ks<=k for m=0.." + std::to_string(d + 2) + ", k(K1,m) over m=2.." +
                    std::to_string(d + 1) + " = {" + (structure_values.empty() ? "" : std::to_string(*structure_values.begin())) +
                    (flat ? "}" : ",...} NOT constant"));
  }
  o.detail = join(parts);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string tier = "fast";
  app.add_option("--tier", tier)->check(CLI::IsMember({"fast", "slow", "all"}));
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> criteria;
  const bool fast = tier != "slow";
  const bool slow = tier != "fast";
  if (fast) {
    criteria.push_back({"1", "census n=2,4,8,16", 10, census});
    criteria.push_back({"2", "kappa(FDSC_n;K_1) for n=2,4,8", 120, kappa_k1});
    criteria.push_back({"3", "exact oracle values on FDSC_2, FDSC_4", 300, exact_small});
    criteria.push_back({"4", "FDSC_8 upper-bound constructions", 10, fdsc8_upper_bounds});
    criteria.push_back({"5", "FDSC_8 lower bound, single elements (fast part)", 120, fdsc8_single_elements});
    criteria.push_back({"6", "lemma suite n=4,8,16", 300, lemma_suite});
    criteria.push_back({"8", "label-level construction scaling d=2..6", 1, label_scaling});
    criteria.push_back({"9", "monotonicity on n=2,4", 60, monotonicity});
  }
  if (slow) {
    criteria.push_back({"5", "FDSC_8 lower bound, K_{1,1} families of size <= 3 (slow part)", 45 * 60, fdsc8_k11_families});
    criteria.push_back({"7", "A1/A2 removal on FDSC_8 and FDSC_16", 30 * 60, a1a2_removal});
  }

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    const auto known = std::find_if(kKnownFailures.begin(), kKnownFailures.end(),
                                    [&](const KnownFailure& k) { return k.id == c.id; });
    std::string note;
    if (known != kKnownFailures.end()) {
      note = pass ? " [known failure did not reproduce]" : " [known failure: " + known->reason + "]";
      if (pass) ++unexpected;
    } else if (!pass) {
      ++unexpected;
    }
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s%s", secs, c.limit_seconds, in_time ? "" : " EXCEEDED");
    std::printf("%s criterion %s: %s -- %s (%s)%s\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                o.detail.c_str(), timing, note.c_str());
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
