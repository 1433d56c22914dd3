// Acceptance suite: one check per criterion, one PASS/FAIL line each.
//
//   acceptance                 run every criterion
//   acceptance --criterion 3   run one criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tolrob/cover.hpp"
#include "tolrob/harness/config.hpp"
#include "tolrob/harness/experiments.hpp"
#include "tolrob/harness/output.hpp"
#include "tolrob/harness/tasks.hpp"
#include "tolrob/lb_linear.hpp"
#include "tolrob/oracle_game.hpp"
#include "tolrob/region.hpp"
#include "tolrob/rerm.hpp"
#include "tolrob/robust_vc.hpp"

namespace {

using namespace tolrob;
using harness::json;

constexpr Seed kSeed = 20240611;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Verdict()> run;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string joined(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : "; ") + x;
  return out;
}

// ----------------------------------------------------------------------------- 1

Verdict loss_table_exact() {
  Verdict v;
  for (double D : {20.0, 50.0, 110.0}) {
    for (std::size_t d : {1, 2, 3}) {
      const auto inst = build_appendixB(D, 1.0, d);
      const LossTable t = loss_table(inst);
      // Cross-check against the distributional loss evaluated directly.
      const double uh1 = robust_loss_distribution(inst.h1(), inst.U, inst.distribution);
      const double uh2 = robust_loss_distribution(inst.h2(), inst.U, inst.distribution);
      const double vh1 = robust_loss_distribution(inst.h1(), inst.V, inst.distribution);
      const double vh2 = robust_loss_distribution(inst.h2(), inst.V, inst.distribution);
      const bool ok = t[0][0] == 0.0 && t[0][1] == 0.5 && t[1][0] == 1.0 && t[1][1] == 0.5 && uh1 == 0.0 &&
                      uh2 == 0.5 && vh1 == 1.0 && vh2 == 0.5;
      v.check(ok, "D=" + num(D) + " d=" + std::to_string(d) + ": (U,h1)=" + num(t[0][0]) + " (U,h2)=" + num(t[0][1]) +
                      " (V,h1)=" + num(t[1][0]) + " (V,h2)=" + num(t[1][1]));
    }
  }
  return v;
}

// ----------------------------------------------------------------------------- 2

Verdict measure_bound() {
  Verdict v;
  for (double D : {20.0, 50.0, 110.0}) {
    for (std::size_t d : {1, 2, 3}) {
      const auto inst = build_appendixB(D, 1.0, d);
      const auto a = measure_bound_audit(inst, 1'000'000, seed_derive(kSeed, "measure", static_cast<std::uint64_t>(D) * 10 + d));
      std::string line = "D=" + num(D) + " d=" + std::to_string(d) + ": p_hat=" + num(a.p_hat) + " sigma=" +
                         num(a.sigma) + " bound=" + num(a.bound) + " (bump/U^g ratio " + num(a.corrected_bound) + ")";
      if (a.exact) line += " exact=" + num(*a.exact);
      v.check(a.within_bound() && a.matches_exact(), line);
    }
  }
  return v;
}

// ----------------------------------------------------------------------------- 3

Verdict query_game() {
  Verdict v;
  for (std::size_t d : {1, 2, 3}) {
    std::vector<double> x, y;
    for (double D : {20.0, 50.0, 110.0}) {
      const json params{{"D", D}, {"gamma", 1.0}, {"d", d}, {"trials", 10000}};
      const auto out = harness::run_experiment("oracle_query_sweep", params,
                                               seed_derive(kSeed, "query", static_cast<std::uint64_t>(D) * 10 + d));
      const std::string cell = "D=" + num(D) + " d=" + std::to_string(d);
      const double e0 = out.table.rows.front().at(1).get<double>();
      v.check(std::abs(e0 - 0.25) <= 0.02, cell + ": budget-0 excess " + num(e0));
      const auto curve_failures = out.summary.at("curve_failures").get<std::size_t>();
      v.check(curve_failures == 0, cell + ": budgets below (1/4)(1-bound)^k - 3 sigma: " + std::to_string(curve_failures) +
                                       " of " + std::to_string(out.table.rows.size()));
      for (const auto& f : out.failures) {
        if (f.find("increases") != std::string::npos || f.find("anchor") != std::string::npos) v.note(cell + ": " + f);
      }
      const auto& th = out.summary.at("threshold_budget");
      if (th.is_null()) {
        v.check(false, cell + ": excess never fell below 1/8");
        continue;
      }
      x.push_back(out.summary.at("D0").get<double>());
      y.push_back(th.get<double>());
      v.note(cell + ": budget-to-detect threshold " + num(y.back()));
    }
    if (x.size() == 3) {
      const double slope = loglog_slope(x, y);
      v.check(slope >= static_cast<double>(d) - 0.5,
              "d=" + std::to_string(d) + ": log-log slope of threshold vs D0/gamma " + num(slope));
    }
  }
  return v;
}

// ----------------------------------------------------------------------------- 4

Verdict thm2_game() {
  Verdict v;
  const json params{{"m", 2}, {"W", 1.0}, {"d", 2}, {"trials", 10000}, {"net", 10000},
                    {"learners", {"rerm", "random_consistent", "omniscient"}}};
  const auto out = harness::run_experiment("lb_linear_game", params, seed_derive(kSeed, "thm2"));
  v.check(out.passed(), "game, stipulations, realizability and cross-loss: " +
                            (out.passed() ? std::string("all hold") : joined(out.failures)));
  for (const auto& row : out.table.rows) {
    v.note(row.at(0).get<std::string>() + ": mean " + num(row.at(5).get<double>()) + " (sigma " +
           num(row.at(6).get<double>()) + "), Pr[loss > 1/8] " + num(row.at(7).get<double>()) +
           (row.at(9).is_null() ? "" : ", exact mean " + num(row.at(9).get<double>())));
  }

  // Independent recount of the 225 cross losses from intersection sizes.
  const auto inst = build_thm2_instance(2, 1.0, 2, seed_derive(kSeed, "thm2-check"));
  std::size_t mismatches = 0, unrealizable = 0;
  for (std::size_t t = 0; t < inst.M; ++t) {
    for (std::size_t u = 0; u < inst.M; ++u) {
      std::size_t lossy = 0, outside = 0;
      for (std::size_t i = 0; i < inst.num_anchors(); ++i) {
        if (inst.in_subset(t, i)) continue;
        ++outside;
        lossy += robust_loss_point(inst.witness(u), inst.regions[i], inst.example(i));
      }
      std::vector<std::size_t> both;
      std::set_intersection(inst.subsets[t].begin(), inst.subsets[t].end(), inst.subsets[u].begin(),
                            inst.subsets[u].end(), std::back_inserter(both));
      const double got = static_cast<double>(lossy) / static_cast<double>(outside);
      if (got != 0.5 - static_cast<double>(both.size()) / 4.0) ++mismatches;
      if (t == u && lossy != 0) ++unrealizable;
    }
  }
  v.check(inst.M == 15, "M = " + std::to_string(inst.M));
  v.check(unrealizable == 0, "witnesses with nonzero loss on their own D_T: " + std::to_string(unrealizable));
  v.check(mismatches == 0, "cross-loss pairs off 1/2 - |T n T'|/4: " + std::to_string(mismatches) + " of 225");
  return v;
}

// ----------------------------------------------------------------------------- 5

Verdict lemma3_stipulations() {
  Verdict v;
  const auto fam = build_shatter_family(1.0, 2, 15, seed_derive(kSeed, "lemma3"));
  v.check(fam.M == 15 && fam.cells.size() == 15, "cells built: " + std::to_string(fam.cells.size()) + " at beta " +
                                                      num(fam.beta));
  v.check(std::abs(fam.cover.mesh - shatter_mesh(fam.W, fam.beta)) <= 1e-9, "cover mesh equals 2W sqrt(2 beta (beta+1))");
  std::size_t samples = 0;
  std::set<RegionFamily::Key> keys;
  for (const auto& c : fam.cells) {
    samples += c.size();
    for (const auto& z : c) keys.insert(RegionFamily::key_of(z));
  }
  v.check(keys.size() == samples, "cells disjoint over " + std::to_string(samples) + " samples");
  v.check(stipulation2_failures(fam) == 0, "stipulation 2 failures: " + std::to_string(stipulation2_failures(fam)));
  const auto net = bounded_linear_net(1.0, 2, 10000, seed_derive(kSeed, "lemma3-net"));
  const std::size_t s1 = stipulation1_failures(fam, net);
  v.check(net.size() == 10000 && s1 == 0,
          "stipulation 1 failures over a " + std::to_string(net.size()) + "-hypothesis net: " + std::to_string(s1));

  const double W = 1.0, beta = 0.125;
  const double cap = W * std::sqrt(2.0 * beta * (beta + 1.0));
  Rng rng = make_rng(seed_derive(kSeed, "cap"));
  std::size_t mismatch = 0;
  const std::size_t n = 100000;
  Vector x;
  for (std::size_t i = 0; i < n; ++i) {
    // A fresh tangent point every 10^4 samples.
    if (i % 10000 == 0) x = uniform_on_sphere(2, W, rng);
    const Hypothesis h = tangent_hypothesis(x, W);
    const Vector z = uniform_on_sphere(2, W * (1.0 + beta), rng);
    mismatch += (predict(h, z) == Label::kPositive) != (distance(z, x * (1.0 + beta)) <= cap);
  }
  const double frac = static_cast<double>(mismatch) / static_cast<double>(n);
  v.check(frac < 1e-3, "cap-radius identity symmetric difference " + num(frac) + " over 10^5 samples");
  return v;
}

// ----------------------------------------------------------------------------- 6

Verdict lemma4() {
  Verdict v;
  const json params{{"eps_grid", {0.1, 0.3}}, {"delta_grid", {0.1, 0.3}}, {"instances", 50}, {"trials", 200}};
  const auto out = harness::run_experiment("lemma4_audit", params, seed_derive(kSeed, "lemma4"));
  for (const auto& row : out.table.rows) {
    const std::string cell = "eps=" + num(row.at(0).get<double>()) + " delta=" + num(row.at(1).get<double>());
    const double freq = row.at(4).get<double>(), target = row.at(5).get<double>(), fs = row.at(6).get<double>();
    const double gap = row.at(7).get<double>(), gs = row.at(8).get<double>(), bound = row.at(9).get<double>();
    v.check(freq >= target - 3.0 * fs, cell + ": frequency " + num(freq) + " vs 1 - delta/2 = " + num(target));
    v.check(gap <= bound + 3.0 * gs, cell + ": mean gap " + num(gap) + " vs alpha/(gamma-alpha) = " + num(bound));
  }
  return v;
}

// ----------------------------------------------------------------------------- 7

Verdict sandwich() {
  Verdict v;
  const json params{{"instances", 50},          {"hypotheses_per_instance", 10}, {"examples_per_instance", 10},
                    {"inclusion_probes", 10000}, {"regularity_probes", 2000}};
  const auto out = harness::run_experiment("sandwich_audit", params, seed_derive(kSeed, "sandwich"));
  const auto checked = out.summary.at("checked").get<std::size_t>();
  v.check(checked >= 500, "audited (h, region, example) triples: " + std::to_string(checked));
  v.check(out.summary.at("violations").get<std::size_t>() == 0,
          "loss-sandwich violations: " + out.summary.at("violations").dump());
  v.check(out.summary.at("inclusion_failures").get<std::size_t>() == 0,
          "set-inclusion failures: " + out.summary.at("inclusion_failures").dump());
  for (const auto& f : out.failures) {
    if (f.find("certification") != std::string::npos) v.check(false, f);
  }
  std::size_t d1_instances = 0;
  for (const auto& row : out.table.rows) {
    if (row.at(1) == "balls") {
      ++d1_instances;
      if (row.at(9).get<std::size_t>() < 10000) v.check(false, "D.1 instance with fewer than 10^4 probes");
    }
  }
  v.note("union-of-balls instances probed: " + std::to_string(d1_instances));

  const NegativeControl neg = sandwich_negative_control(seed_derive(kSeed, "negative"));
  const bool broke = std::any_of(neg.report.violations.begin(), neg.report.violations.end(),
                                 [](const SandwichViolation& s) { return s.left; });
  v.check(broke && !neg.report.regular.front(),
          "negative control: " + std::to_string(neg.report.violations.size()) + " violation(s), regular=" +
              (neg.report.regular.front() ? "yes" : "no"));
  return v;
}

// ----------------------------------------------------------------------------- 8

Verdict tolrerm_end_to_end() {
  Verdict v;
  const json params{{"n_grid", {10, 30, 100, 300}}, {"eps", 0.1}, {"delta", 0.1}, {"gamma", 0.5},
                    {"tasks", 20},                   {"trials_per_task", 10}};
  const auto out = harness::run_experiment("tolrerm_sweep", params, seed_derive(kSeed, "tolrerm"));
  const double frac = out.summary.at("frac_within_eps_at_largest_n").get<double>();
  v.check(frac >= 0.9, "fraction within eps at n=300: " + num(frac));
  const auto medians = out.summary.at("medians").get<std::vector<double>>();
  bool nonincreasing = true;
  std::string ms;
  for (std::size_t j = 0; j < medians.size(); ++j) {
    if (j > 0 && medians[j] > medians[j - 1]) nonincreasing = false;
    ms += (j ? ", " : "") + num(medians[j]);
  }
  v.check(nonincreasing, "median excess across n: " + ms);
  return v;
}

// ----------------------------------------------------------------------------- 9

// Largest subset of `points` on which the class realizes every labeling.
std::size_t brute_force_vc(const FiniteClass& cls, const std::vector<Vector>& points) {
  const std::size_t n = points.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    std::set<std::uint64_t> labelings;
    for (const auto& h : cls.hypotheses()) {
      std::uint64_t lab = 0;
      std::size_t bit = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((mask >> i) & 1U)) continue;
        if (predict(h, points[i]) == Label::kPositive) lab |= std::uint64_t{1} << bit;
        ++bit;
      }
      labelings.insert(lab);
    }
    if (labelings.size() == (std::size_t{1} << size)) best = size;
  }
  return best;
}

Verdict robust_vc() {
  Verdict v;
  Rng rng = make_rng(seed_derive(kSeed, "vc-classes"));
  for (int c = 0; c < 10; ++c) {
    std::vector<Hypothesis> hs;
    std::vector<Vector> pts;
    std::string kind;
    if (c % 3 == 0) {
      kind = "thresholds";
      for (int i = 0; i < 8; ++i) hs.push_back(Hypothesis::linear(Vector{uniform01(rng) < 0.5 ? 1.0 : -1.0}, uniform(rng, -2.0, 2.0)));
      for (int i = 0; i < 7; ++i) pts.push_back(Vector{uniform(rng, -2.0, 2.0)});
    } else if (c % 3 == 1) {
      kind = "halfplanes";
      for (int i = 0; i < 24; ++i) hs.push_back(Hypothesis::linear(uniform_on_sphere(2, 1.0, rng), uniform(rng, -1.0, 1.0)));
      for (int i = 0; i < 7; ++i) pts.push_back(uniform_in_ball(Ball(Vector{0.0, 0.0}, 1.0), rng));
    } else {
      kind = "discs";
      for (int i = 0; i < 24; ++i) {
        hs.push_back(Hypothesis::sphere(uniform_in_ball(Ball(Vector{0.0, 0.0}, 1.0), rng), uniform(rng, 0.2, 1.0),
                                        uniform01(rng) < 0.5 ? Label::kPositive : Label::kNegative));
      }
      for (int i = 0; i < 7; ++i) pts.push_back(uniform_in_ball(Ball(Vector{0.0, 0.0}, 1.0), rng));
    }
    const FiniteClass cls(std::move(hs));
    std::vector<LabeledExample> universe;
    for (const auto& p : pts) universe.push_back({p, uniform01(rng) < 0.5 ? Label::kPositive : Label::kNegative});
    const auto est = robust_vc_search(cls, RegionFamily::with_default_ball(0.0), universe, pts.size());
    const std::size_t want = brute_force_vc(cls, pts);
    const bool certified = est.dimension_upper && *est.dimension_upper == est.dimension_lower;
    v.check(certified && est.dimension_lower == want,
            "k=1 class " + std::to_string(c) + " (" + kind + "): robust VC " + std::to_string(est.dimension_lower) +
                (certified ? " certified" : " uncertified") + ", 0-1 loss VC " + std::to_string(want));
  }

  const json params{{"d_grid", {1, 2, 3}}, {"k_grid", {1, 2, 3}}, {"max_m", 6}};
  const auto out = harness::run_experiment("robust_vc_audit", params, seed_derive(kSeed, "overhead"));
  v.check(out.summary.at("sauer_violations").get<std::size_t>() == 0,
          "Sauer-bound violations over every scanned sample: " + out.summary.at("sauer_violations").dump());
  v.check(out.summary.at("claim_violations").get<std::size_t>() == 0,
          "correspondence-claim violations: " + out.summary.at("claim_violations").dump());
  for (const auto& row : out.table.rows) {
    v.check(row.at(5).get<bool>(), "d=" + row.at(0).dump() + " k=" + row.at(1).dump() + ": VC [" + row.at(2).dump() +
                                       ", " + row.at(3).dump() + "], bound " + row.at(4).dump());
  }
  return v;
}

// ---------------------------------------------------------------------------- 10

Verdict property_suites() {
  Verdict v;
  Rng rng = make_rng(seed_derive(kSeed, "properties"));

  std::size_t mono_fail = 0, collapse_fail = 0;
  for (int i = 0; i < 50; ++i) {
    const Region base = harness::random_base_region(static_cast<std::size_t>(i % 3), rng);
    const double g1 = uniform(rng, 0.05, 1.0), g2 = uniform(rng, 0.05, 1.0);
    const Region e1 = expand(base, g1);
    const Region e12 = expand(base, g1 + g2);
    const Region nested = Region::expanded(Region::expanded(base, g1), g2);
    for (int k = 0; k < 200; ++k) {
      const Vector p = uniform_in_ball(Ball(Vector{0.0, 0.0}, 4.0), rng);
      if (contains(base, p) && !contains(e1, p)) ++mono_fail;
      if (contains(e1, p) && !contains(e12, p)) ++mono_fail;
      if (contains(nested, p) != contains(e12, p)) ++collapse_fail;
    }
  }
  v.check(mono_fail == 0, "expansion monotonicity violations: " + std::to_string(mono_fail));
  v.check(collapse_fail == 0, "collapse-law violations: " + std::to_string(collapse_fail));

  std::size_t profile_fail = 0, dominance_fail = 0;
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto task = harness::random_finite_task(seed_derive(kSeed, "prop-task", t));
    Rng srng = make_rng(seed_derive(kSeed, "prop-sample", t));
    const auto s = task.dist.sample(30, srng);
    const auto oracle = RermOracle::exhaustive(task.cls);
    if (!opt_profile(oracle, task.family, s, grid).monotone()) ++profile_fail;
    for (double r : {0.0, 0.25, 0.5}) {
      const auto fit = rerm_solve(oracle, task.family, s, r);
      const RegionFamily fam = task.family.expanded(r);
      for (const auto& h : task.cls.hypotheses()) {
        if (fit.achieved_loss > robust_loss_sample(h, fam, s)) ++dominance_fail;
      }
    }
  }
  v.check(profile_fail == 0, "non-monotone OPT profiles: " + std::to_string(profile_fail) + " of 20");
  v.check(dominance_fail == 0, "oracle dominance violations: " + std::to_string(dominance_fail));

  const std::vector<std::pair<std::string, json>> runs{
      {"tolrerm_sweep", {{"tasks", 3}, {"trials_per_task", 3}}},
      {"lemma4_audit", {{"instances", 5}, {"trials", 100}}},
      {"sandwich_audit", {{"instances", 4}, {"inclusion_probes", 1000}, {"regularity_probes", 200}}},
      {"lb_linear_game", {{"m", 1}, {"trials", 500}, {"net", 500}}},
      {"oracle_query_sweep", {{"d", 1}, {"trials", 1000}}},
      {"robust_vc_audit", {{"max_m", 4}}},
      {"regularity_check", {{"hypothesis", {{"type", "linear"}, {"w", {1.0, 0.0}}, {"b", 0.0}}}}}};
  for (const auto& [name, params] : runs) {
    harness::ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.seed = 12345;
    cfg.params = params;
    const std::string a = harness::render_csv(harness::run(cfg));
    const std::string b = harness::render_csv(harness::run(cfg));
    v.check(a == b, name + ": CSV re-run bit-identical (" + std::to_string(a.size()) + " bytes)");
  }
  return v;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "two-anchor loss table", 1.0, loss_table_exact},
      {2, "two-anchor measure bound", 120.0, measure_bound},
      {3, "sampling-oracle query game", 600.0, query_game},
      {4, "bounded-linear lower-bound game", 300.0, thm2_game},
      {5, "shatter-family stipulations", 60.0, lemma3_stipulations},
      {6, "profile-gap audit", 120.0, lemma4},
      {7, "cover sandwich", 120.0, sandwich},
      {8, "tolerant RERM end to end", 600.0, tolrerm_end_to_end},
      {9, "robust VC audits", 300.0, robust_vc},
      {10, "property suites and reproducibility", 1200.0, property_suites},
  };
  return all;
}

bool run_criterion(const Criterion& c, bool verbose) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = c.run();
  } catch (const std::exception& e) {
    v.check(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.check(secs <= c.limit_seconds, "runtime " + num(secs) + " s (limit " + num(c.limit_seconds) + " s)");
  std::printf("AC%-2d %s  %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title.c_str());
  if (verbose || !v.pass) {
    for (const auto& n : v.notes) std::printf("       %s\n", n.c_str());
  }
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  bool quiet = false;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_flag("--quiet", quiet, "Print details only for failing criteria");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    all_pass = run_criterion(c, !quiet) && all_pass;
  }
  return all_pass ? 0 : 1;
}
