#include "tolrob/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tolrob/cover.hpp"
#include "tolrob/lb_linear.hpp"
#include "tolrob/model.hpp"
#include "tolrob/oracle_game.hpp"
#include "tolrob/rerm.hpp"
#include "tolrob/robust_vc.hpp"
#include "tolrob/harness/serialization.hpp"
#include "tolrob/harness/tasks.hpp"

#ifndef TOLROB_VERSION_STRING
#define TOLROB_VERSION_STRING "0.0.0"
#endif

namespace tolrob::harness {

std::string library_version() { return TOLROB_VERSION_STRING; }

namespace {

std::string fmt(double x) {
  json j = x;
  return j.dump();
}

// Linear-interpolation quantile of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return NAN;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void require_unit_interval(double x, const std::string& name) {
  require(x > 0.0 && x <= 1.0, name + " must lie in (0, 1]");
}

void require_increasing(const std::vector<std::size_t>& xs, const std::string& name) {
  for (std::size_t i = 1; i < xs.size(); ++i) require(xs[i] > xs[i - 1], name + " must be strictly increasing");
}

// ---------------------------------------------------------------- tolrerm_sweep

json resolve_tolrerm_sweep(const json& params) {
  ParamReader p(params);
  const auto n_grid = p.counts("n_grid", {10, 30, 100, 300});
  require(!n_grid.empty() && n_grid.front() >= 1, "n_grid needs positive sizes");
  require_increasing(n_grid, "n_grid");
  require_unit_interval(p.real("eps", 0.1), "eps");
  require_unit_interval(p.real("delta", 0.1), "delta");
  require(p.real("gamma", 0.5) > 0.0, "gamma must be > 0");
  require(p.count("tasks", 20) >= 1, "tasks must be >= 1");
  require(p.count("trials_per_task", 10) >= 1, "trials_per_task must be >= 1");
  require(p.count("support", 12) >= 1, "support must be >= 1");
  return p.finish();
}

Outcome run_tolrerm_sweep(const json& prm, std::uint64_t seed) {
  const auto n_grid = prm.at("n_grid").get<std::vector<std::size_t>>();
  const double eps = prm.at("eps").get<double>();
  const double delta = prm.at("delta").get<double>();
  const double gamma = prm.at("gamma").get<double>();
  const auto tasks = prm.at("tasks").get<std::size_t>();
  const auto trials = prm.at("trials_per_task").get<std::size_t>();
  FiniteTaskOptions topts;
  topts.support = prm.at("support").get<std::size_t>();

  std::vector<std::vector<double>> excess(n_grid.size());
  for (std::size_t k = 0; k < tasks; ++k) {
    const Seed task_seed = seed_derive(seed, "task", k);
    const FiniteTask task = random_finite_task(task_seed, topts);
    const RermOracle oracle = RermOracle::exhaustive(task.cls);
    const double opt_gamma = class_optimum(task.cls, task.family.expanded(gamma), task.dist);
    for (std::size_t t = 0; t < trials; ++t) {
      // One seed per trial: r is shared across n and samples are nested prefixes.
      const Seed trial_seed = seed_derive(task_seed, "trial", t);
      for (std::size_t j = 0; j < n_grid.size(); ++j) {
        const auto res = tolrerm(oracle, task.family, task.dist, eps, delta, gamma, n_grid[j], trial_seed);
        excess[j].push_back(robust_loss_distribution(res.fit.hypothesis, task.family, task.dist) - opt_gamma);
      }
    }
  }

  Outcome out;
  out.table.columns = {{"n", "sample size"},
                       {"trials", "tasks x trials per task"},
                       {"excess_q10", "10% quantile of l_U(h) - min_h l_{U^gamma}(h)"},
                       {"excess_median", "median excess"},
                       {"excess_q90", "90% quantile of excess"},
                       {"excess_mean", "mean excess"},
                       {"frac_within_eps", "fraction of trials with excess <= eps"}};
  std::vector<double> medians;
  double last_frac = 0.0;
  for (std::size_t j = 0; j < n_grid.size(); ++j) {
    auto xs = excess[j];
    std::sort(xs.begin(), xs.end());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const auto within = std::count_if(xs.begin(), xs.end(), [&](double e) { return e <= eps; });
    last_frac = static_cast<double>(within) / static_cast<double>(xs.size());
    medians.push_back(quantile(xs, 0.5));
    out.table.rows.push_back({n_grid[j], xs.size(), quantile(xs, 0.1), medians.back(), quantile(xs, 0.9), mean,
                              last_frac});
  }
  out.summary = {{"largest_n", n_grid.back()}, {"frac_within_eps_at_largest_n", last_frac},
                 {"target", 1.0 - delta}, {"medians", medians}};
  if (last_frac < 1.0 - delta) {
    out.failures.push_back("fraction within eps at n=" + std::to_string(n_grid.back()) + " is " + fmt(last_frac) +
                           " < 1 - delta");
  }
  for (std::size_t j = 1; j < medians.size(); ++j) {
    if (medians[j] > medians[j - 1]) {
      out.failures.push_back("median excess increases from n=" + std::to_string(n_grid[j - 1]) + " to n=" +
                             std::to_string(n_grid[j]));
    }
  }
  return out;
}

// ----------------------------------------------------------------- lemma4_audit

json resolve_lemma4(const json& params) {
  ParamReader p(params);
  for (double e : p.reals("eps_grid", {0.1, 0.3})) require_unit_interval(e, "eps_grid entries");
  for (double d : p.reals("delta_grid", {0.1, 0.3})) require_unit_interval(d, "delta_grid entries");
  require(p.real("gamma", 0.5) > 0.0, "gamma must be > 0");
  require(p.count("instances", 50) >= 1, "instances must be >= 1");
  require(p.count("trials", 200) >= 100, "trials must be >= 100");
  require(p.count("sample_size", 40) >= 1, "sample_size must be >= 1");
  return p.finish();
}

Outcome run_lemma4(const json& prm, std::uint64_t seed) {
  const auto eps_grid = prm.at("eps_grid").get<std::vector<double>>();
  const auto delta_grid = prm.at("delta_grid").get<std::vector<double>>();
  const double gamma = prm.at("gamma").get<double>();
  const auto instances = prm.at("instances").get<std::size_t>();
  const auto trials = prm.at("trials").get<std::size_t>();
  const auto sample_size = prm.at("sample_size").get<std::size_t>();

  std::vector<StepProfile> profiles;
  for (std::size_t i = 0; i < instances; ++i) {
    const FiniteTask task = random_finite_task(seed_derive(seed, "instance", i));
    Rng rng = make_rng(seed_derive(seed, "sample", i));
    const auto s = task.dist.sample(sample_size, rng);
    profiles.emplace_back(task.cls, task.family, s, gamma);
  }

  Outcome out;
  out.table.columns = {{"eps", "accuracy parameter"},
                       {"delta", "confidence parameter"},
                       {"alpha", "eps delta gamma / 7"},
                       {"trials", "pooled radius draws over all instances"},
                       {"frequency", "fraction with OPT^r - OPT^{r-alpha} <= eps/3"},
                       {"frequency_target", "1 - delta/2"},
                       {"frequency_sigma", "binomial sigma at the target"},
                       {"mean_gap", "mean of OPT^r - OPT^{r-alpha}"},
                       {"gap_sigma", "standard error of mean_gap"},
                       {"gap_bound", "alpha / (gamma - alpha)"},
                       {"markov_bound", "delta eps / 6"},
                       {"pass", "both checks hold within 3 sigma"}};
  for (double eps : eps_grid) {
    for (double delta : delta_grid) {
      double hits = 0.0, sum = 0.0, sum_sq = 0.0;
      std::size_t total = 0;
      Lemma4Report last;
      for (std::size_t i = 0; i < instances; ++i) {
        const auto& prof = profiles[i];
        last = lemma4_audit([&](double r) { return prof(r); }, eps, delta, gamma, trials,
                            seed_derive(seed, "audit", i));
        const auto n = static_cast<double>(last.trials);
        hits += last.frequency * n;
        sum += last.mean_gap * n;
        sum_sq += last.gap_stddev * last.gap_stddev * (n - 1.0) + n * last.mean_gap * last.mean_gap;
        total += last.trials;
      }
      const auto N = static_cast<double>(total);
      const double freq = hits / N;
      const double target = 1.0 - delta / 2.0;
      const double freq_sigma = std::sqrt(target * (1.0 - target) / N);
      const double mean = sum / N;
      const double var = std::max(0.0, (sum_sq - N * mean * mean) / (N - 1.0));
      const double gap_sigma = std::sqrt(var / N);
      const bool pass = freq >= target - 3.0 * freq_sigma && mean <= last.gap_bound + 3.0 * gap_sigma;
      out.table.rows.push_back({eps, delta, last.alpha, total, freq, target, freq_sigma, mean, gap_sigma,
                                last.gap_bound, last.markov_bound, pass});
      if (!pass) out.failures.push_back("profile gap check failed at eps=" + fmt(eps) + " delta=" + fmt(delta));
    }
  }
  out.summary = {{"instances", instances}};
  return out;
}

// --------------------------------------------------------------- sandwich_audit

json resolve_sandwich(const json& params) {
  ParamReader p(params);
  require(p.count("instances", 50) >= 1, "instances must be >= 1");
  require(p.count("hypotheses_per_instance", 10) >= 1, "hypotheses_per_instance must be >= 1");
  require(p.count("examples_per_instance", 10) >= 1, "examples_per_instance must be >= 1");
  p.count("inclusion_probes", 10000);
  p.count("regularity_probes", 2000);
  return p.finish();
}

Outcome run_sandwich(const json& prm, std::uint64_t seed) {
  const auto instances = prm.at("instances").get<std::size_t>();
  const auto n_h = prm.at("hypotheses_per_instance").get<std::size_t>();
  const auto n_ex = prm.at("examples_per_instance").get<std::size_t>();
  const auto probes = prm.at("inclusion_probes").get<std::size_t>();
  const auto reg_probes = prm.at("regularity_probes").get<std::size_t>();

  Outcome out;
  out.table.columns = {{"instance", "instance index"},
                       {"kind", "points (finite middle) or balls (union-of-balls middle)"},
                       {"r", "outer expansion radius"},
                       {"alpha", "sandwich gap"},
                       {"middle_count", "points or balls in the middle set"},
                       {"count_bound", "middle-count bound"},
                       {"checked", "(hypothesis, example) pairs"},
                       {"regular", "hypotheses certified alpha-regular"},
                       {"violations", "loss-sandwich violations"},
                       {"inclusion_probes", "set-inclusion probes"},
                       {"inclusion_failures", "probes violating lower in middle in upper"}};
  std::size_t checked = 0, violations = 0, certified_violations = 0, inclusion_failures = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = make_rng(seed_derive(seed, "instance", i));
    const Region base = random_base_region(i % 3, rng);
    const double r = uniform(rng, 0.5, 1.0);
    const double alpha = r * uniform(rng, 0.3, 0.6);
    const bool finite = i % 2 == 0;
    const Seed build_seed = seed_derive(seed, "build", i);
    const SandwichTriple triple =
        finite ? build_v_lemma5(base, r, alpha, build_seed) : build_v_lemmaD1(base, r, alpha, build_seed);
    std::vector<Hypothesis> hs;
    for (std::size_t h = 0; h < n_h; ++h) hs.push_back(random_regular_hypothesis(alpha, rng));
    std::vector<LabeledExample> exs;
    for (std::size_t e = 0; e < n_ex; ++e) {
      exs.push_back({Vector{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)},
                     uniform01(rng) < 0.5 ? Label::kPositive : Label::kNegative});
    }
    const auto rep = sandwich_audit(triple, hs, exs, {.regularity_probes = reg_probes, .seed = seed_derive(seed, "reg", i)});
    const auto inc = set_inclusion_audit(triple, probes, seed_derive(seed, "inclusion", i));
    const auto regular = static_cast<std::size_t>(std::count(rep.regular.begin(), rep.regular.end(), true));
    std::size_t cert = 0;
    for (const auto& v : rep.violations) cert += v.certified ? 1 : 0;
    const std::size_t inc_fail = inc.lower_not_in_middle + inc.middle_not_in_upper;
    checked += rep.checked;
    violations += rep.violations.size();
    certified_violations += cert;
    inclusion_failures += inc_fail;
    out.table.rows.push_back({i, finite ? "points" : "balls", r, alpha, triple.middle_count(), triple.count_bound(),
                              rep.checked, regular, rep.violations.size(), inc.probes, inc_fail});
    if (static_cast<double>(triple.middle_count()) > triple.count_bound()) {
      out.failures.push_back("instance " + std::to_string(i) + ": middle count exceeds its bound");
    }
    if (regular != hs.size()) {
      out.failures.push_back("instance " + std::to_string(i) + ": a generated hypothesis failed certification");
    }
  }
  const NegativeControl neg = sandwich_negative_control(seed_derive(seed, "negative-control"));
  const bool neg_broke = std::any_of(neg.report.violations.begin(), neg.report.violations.end(),
                                     [](const SandwichViolation& v) { return v.left && !v.certified; });
  out.summary = {{"checked", checked},
                 {"violations", violations},
                 {"certified_violations", certified_violations},
                 {"inclusion_failures", inclusion_failures},
                 {"negative_control_violations", neg.report.violations.size()},
                 {"negative_control_regular", neg.report.regular.front()}};
  if (violations > 0) out.failures.push_back(std::to_string(violations) + " loss-sandwich violations");
  if (inclusion_failures > 0) out.failures.push_back(std::to_string(inclusion_failures) + " set-inclusion failures");
  if (!neg_broke) out.failures.push_back("negative control did not break the sandwich");
  return out;
}

// -------------------------------------------------------------- lb_linear_game

json resolve_lb_linear(const json& params) {
  ParamReader p(params);
  const auto m = p.count("m", 2);
  require(m >= 1 && m <= 4, "m must lie in [1, 4]");
  require(p.real("W", 1.0) > 0.0, "W must be > 0");
  require(p.count("d", 2) >= 2, "d must be >= 2");
  require(p.count("trials", 10000) >= 1, "trials must be >= 1");
  p.count("n_samples", m);
  p.count("net", 10000);
  const json learners = p.raw("learners", json::array({"rerm", "random_consistent", "omniscient"}));
  require(learners.is_array() && !learners.empty(), "learners must be a nonempty array");
  for (const auto& l : learners) {
    require(l == "rerm" || l == "random_consistent" || l == "omniscient",
            "learners are rerm, random_consistent or omniscient");
  }
  return p.finish();
}

Outcome run_lb_linear(const json& prm, std::uint64_t seed) {
  const auto m = prm.at("m").get<std::size_t>();
  const double W = prm.at("W").get<double>();
  const auto d = prm.at("d").get<std::size_t>();
  const auto trials = prm.at("trials").get<std::size_t>();
  const auto n_samples = prm.at("n_samples").get<std::size_t>();
  const auto net_size = prm.at("net").get<std::size_t>();

  Outcome out;
  out.table.columns = {{"learner", "rerm, random_consistent or omniscient"},
                       {"m", "subset size"},
                       {"M", "number of cells, C(3m, m)"},
                       {"n_samples", "samples shown to the learner"},
                       {"trials", "game trials"},
                       {"mean_loss", "mean robust loss on D_T"},
                       {"loss_sigma", "standard error of mean_loss"},
                       {"freq_loss_above_eighth", "fraction of trials with loss > 1/8"},
                       {"freq_sigma", "binomial sigma at 1/7"},
                       {"exact_expected_loss", "loss averaged over every subset and sample"},
                       {"pass", "lower-bound checks (omniscient: zero loss)"}};
  Thm2Instance inst;
  try {
    inst = build_thm2_instance(m, W, d, seed_derive(seed, "instance"));
  } catch (const std::logic_error& e) {
    out.failures.push_back(std::string("instance audit failed: ") + e.what());
    return out;
  }
  const auto net = bounded_linear_net(W, d, net_size, seed_derive(seed, "net"));
  const std::size_t s1 = stipulation1_failures(inst.shatter, net);
  const std::size_t s2 = stipulation2_failures(inst.shatter);
  std::size_t unrealizable = 0, cross_mismatch = 0;
  for (std::size_t t = 0; t < inst.M; ++t) {
    const auto dist = inst.distribution_for(t);
    if (robust_loss_distribution(inst.witness(t), inst.family, dist) != 0.0) ++unrealizable;
    for (std::size_t u = 0; u < inst.M; ++u) {
      const double got = robust_loss_distribution(inst.witness(u), inst.family, dist);
      if (std::abs(got - cross_loss_formula(inst.subsets[t], inst.subsets[u], m)) > 1e-12) ++cross_mismatch;
    }
  }
  if (s1 > 0) out.failures.push_back(std::to_string(s1) + " net hypotheses negative on every cell");
  if (s2 > 0) out.failures.push_back(std::to_string(s2) + " witness predictions positive off their cell");
  if (unrealizable > 0) out.failures.push_back(std::to_string(unrealizable) + " witnesses not robust on D_T");
  if (cross_mismatch > 0) out.failures.push_back(std::to_string(cross_mismatch) + " cross-loss table mismatches");

  const double enumeration = static_cast<double>(inst.M) * std::pow(2.0 * static_cast<double>(m), static_cast<double>(m));
  for (const auto& name : prm.at("learners")) {
    const auto learner_name = name.get<std::string>();
    const Learner learner = learner_name == "rerm"                ? rerm_over_witnesses()
                            : learner_name == "random_consistent" ? random_consistent()
                                                                  : omniscient();
    const auto g = run_adversarial_game(inst, learner, n_samples, trials, seed_derive(seed_derive(seed, "game"), learner_name));
    const double loss_sigma = g.loss_stddev / std::sqrt(static_cast<double>(trials));
    const double target = 1.0 / 7.0;
    const double freq_sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(trials));
    json exact = nullptr;
    if (n_samples == m && enumeration <= 1e6) exact = exact_expected_loss(inst, learner);
    bool pass = true;
    if (learner_name == "omniscient") {
      pass = g.mean_loss == 0.0;
    } else if (n_samples <= m) {
      pass = g.mean_loss >= 0.25 - 3.0 * loss_sigma && g.freq_loss_above_eighth >= target - 3.0 * freq_sigma;
    }
    if (!pass) out.failures.push_back("learner " + learner_name + " violates the expected game outcome");
    out.table.rows.push_back(std::vector<json>{learner_name, m, inst.M, n_samples, trials, g.mean_loss, loss_sigma,
                              g.freq_loss_above_eighth, freq_sigma, exact, pass});
  }
  json witnesses = json::array();
  for (std::size_t t = 0; t < inst.M; ++t) witnesses.push_back(to_json(inst.witness(t)));
  json anchors = json::array();
  for (const auto& a : inst.anchors) anchors.push_back(to_json(a));
  out.summary = {{"beta", inst.shatter.beta},
                 {"cover_centers", inst.shatter.cover.centers.size()},
                 {"stipulation1_failures", s1},
                 {"stipulation2_failures", s2},
                 {"unrealizable_witnesses", unrealizable},
                 {"cross_loss_mismatches", cross_mismatch},
                 {"instance", {{"subsets", inst.subsets}, {"anchors", anchors}, {"witnesses", witnesses}}}};
  return out;
}

// ---------------------------------------------------------- oracle_query_sweep

std::vector<std::size_t> default_budgets(const AppendixBInstance& inst) {
  const double reach = 20.0 / appendixB_corrected_bound(inst);
  std::vector<std::size_t> b{0};
  for (std::size_t k = 1; static_cast<double>(b.back()) < reach; k *= 2) b.push_back(k);
  return b;
}

json resolve_query_sweep(const json& params) {
  ParamReader p(params);
  const double D = p.real("D", 20.0);
  const double gamma = p.real("gamma", 1.0);
  const auto d = p.count("d", 2);
  require(gamma > 0.0, "gamma must be > 0");
  require(D > 10.0 * gamma, "D must exceed 10 gamma");
  require(d >= 1, "d must be >= 1");
  require(p.count("trials", 2000) >= 1000, "trials must be >= 1000");
  auto budgets = p.counts("budgets", {});
  require_increasing(budgets, "budgets");
  json resolved = p.finish();
  if (budgets.empty()) resolved["budgets"] = default_budgets(build_appendixB(D, gamma, d));
  return resolved;
}

Outcome run_query_sweep(const json& prm, std::uint64_t seed) {
  const double D = prm.at("D").get<double>();
  const double gamma = prm.at("gamma").get<double>();
  const auto d = prm.at("d").get<std::size_t>();
  const auto trials = prm.at("trials").get<std::size_t>();
  const auto budgets = prm.at("budgets").get<std::vector<std::size_t>>();
  const AppendixBInstance inst = build_appendixB(D, gamma, d);
  const QuerySweepResult res = run_query_game(inst, budgets, trials, seed);

  Outcome out;
  out.table.columns = {{"budget", "sampling-oracle queries"},
                       {"excess_error", "achieved robust loss minus OPT_Z"},
                       {"ci_lo", "95% Wilson lower bound"},
                       {"ci_hi", "95% Wilson upper bound"},
                       {"D", "region-diameter parameter"},
                       {"gamma", "tolerance"},
                       {"d", "dimension"},
                       {"seed", "master seed"}};
  const auto N = static_cast<double>(trials);
  std::size_t curve_failures = 0;
  for (std::size_t j = 0; j < budgets.size(); ++j) {
    const double e = res.excess_error[j];
    out.table.rows.push_back({budgets[j], e, res.conf_intervals[j].first, res.conf_intervals[j].second, D, gamma, d,
                              seed});
    if (budgets[j] == 0 && std::abs(e - 0.25) > 0.02) out.failures.push_back("budget-0 excess is " + fmt(e));
    if (j > 0) {
      const double q = 2.0 * res.excess_error[j - 1];
      const double sigma = 0.5 * std::sqrt(std::max(q * (1.0 - q), 1.0 / N) / N);
      if (e > res.excess_error[j - 1] + 3.0 * sigma) {
        out.failures.push_back("excess increases at budget " + std::to_string(budgets[j]));
      }
    }
    const double curve = query_lower_curve(inst, budgets[j]);
    const double c = 2.0 * curve;
    const double curve_sigma = 0.5 * std::sqrt(c * (1.0 - c) / N);
    if (e < curve - 3.0 * curve_sigma) ++curve_failures;
  }
  if (curve_failures > 0) {
    out.failures.push_back(std::to_string(curve_failures) + " budgets fall below (1/4)(1 - bound)^k - 3 sigma");
  }
  const auto [diff, sym_sigma] = anchor_symmetry(res);
  if (diff > 3.0 * sym_sigma) out.failures.push_back("per-anchor detection frequencies differ");
  const auto threshold = budget_threshold(res);
  out.summary = {{"D0", inst.D0},
                 {"bound", appendixB_bound(inst)},
                 {"corrected_bound", appendixB_corrected_bound(inst)},
                 {"v_trials", res.v_trials},
                 {"threshold_budget", threshold ? json(*threshold) : json(nullptr)},
                 {"curve_failures", curve_failures},
                 {"anchor_frequency_difference", diff},
                 {"anchor_frequency_sigma", sym_sigma}};
  return out;
}

// ------------------------------------------------------------- robust_vc_audit

json resolve_robust_vc(const json& params) {
  ParamReader p(params);
  for (auto d : p.counts("d_grid", {1, 2, 3})) require(d >= 1 && d <= 3, "d_grid entries lie in {1, 2, 3}");
  for (auto k : p.counts("k_grid", {1, 2, 3})) require(k >= 1 && k <= 6, "k_grid entries lie in [1, 6]");
  require(p.count("max_m", 6) >= 1, "max_m must be >= 1");
  return p.finish();
}

Outcome run_robust_vc(const json& prm, std::uint64_t seed) {
  const auto d_grid = prm.at("d_grid").get<std::vector<std::size_t>>();
  const auto k_grid = prm.at("k_grid").get<std::vector<std::size_t>>();
  const auto max_m = prm.at("max_m").get<std::size_t>();
  const auto rows = overhead_audit(d_grid, k_grid, default_overhead_instance, seed, max_m);
  Outcome out;
  out.table.columns = {{"d", "ordinary VC dimension of the base class"},
                       {"k", "points per region"},
                       {"vc_lower", "largest robustly shattered subset found"},
                       {"vc_upper", "certified upper value (empty if not certified)"},
                       {"bound_value", "Sauer-Shelah count at k times the certified value"},
                       {"pass", "certified, 2^m within the bound, no Sauer or correspondence violations"}};
  std::size_t sauer = 0, claim = 0;
  for (const auto& r : rows) {
    out.table.rows.push_back(std::vector<json>{r.d, r.k, r.vc_lower, r.vc_upper ? json(*r.vc_upper) : json(nullptr), r.bound_value,
                              r.pass});
    sauer += r.sauer_violations;
    claim += r.claim_violations;
    if (!r.pass) out.failures.push_back("overhead audit failed at d=" + std::to_string(r.d) + " k=" + std::to_string(r.k));
  }
  out.summary = {{"sauer_violations", sauer}, {"claim_violations", claim}};
  return out;
}

// ------------------------------------------------------------ regularity_check

json resolve_regularity(const json& params) {
  ParamReader p(params);
  const json h = p.raw("hypothesis", {{"type", "linear"}, {"w", {1.0, 0.0}}, {"b", 0.0}});
  const Hypothesis hyp = hypothesis_from_json(h);
  require(p.real("alpha", 0.5) > 0.0, "alpha must be > 0");
  p.count("probes", 1000);
  const json domain = p.raw("domain", {{"center", {0.0, 0.0}}, {"radius", 3.0}});
  require(domain.is_object() && domain.contains("center") && domain.contains("radius"),
          "domain needs center and radius");
  require(vector_from_json(domain.at("center")).dim() == hyp.dim(), "domain and hypothesis dimensions differ");
  require(domain.at("radius").is_number() && domain.at("radius").get<double>() >= 0.0, "domain radius must be >= 0");
  const std::string expect = p.text("expect", "any");
  require(expect == "any" || expect == "pass" || expect == "fail", "expect is any, pass or fail");
  return p.finish();
}

Outcome run_regularity(const json& prm, std::uint64_t seed) {
  const Hypothesis h = hypothesis_from_json(prm.at("hypothesis"));
  const double alpha = prm.at("alpha").get<double>();
  const auto probes = prm.at("probes").get<std::size_t>();
  const Ball domain(vector_from_json(prm.at("domain").at("center")), prm.at("domain").at("radius").get<double>());
  const auto cert = regularity_check(h, alpha, probes, domain, seed);
  Outcome out;
  out.table.columns = {{"alpha", "regularity radius"},
                       {"probes", "probe points checked"},
                       {"failures", "probes with no constant alpha-ball through them"},
                       {"passed", "no failures"}};
  out.table.rows.push_back({alpha, cert.probes, cert.failures.size(), cert.passed()});
  json failures = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(cert.failures.size(), 20); ++i) {
    failures.push_back(to_json(cert.failures[i]));
  }
  out.summary = {{"first_failures", failures}};
  const auto expect = prm.at("expect").get<std::string>();
  if ((expect == "pass" && !cert.passed()) || (expect == "fail" && cert.passed())) {
    out.failures.push_back("regularity outcome differs from expect=" + expect);
  }
  return out;
}

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> all{
      {"tolrerm_sweep", "TolRERM excess robust loss against min_h l_{U^gamma} over a sample-size grid",
       resolve_tolrerm_sweep, run_tolrerm_sweep},
      {"lemma4_audit", "OPT^r - OPT^{r-alpha} over random radii on step profiles", resolve_lemma4, run_lemma4},
      {"sandwich_audit", "finite and union-of-balls sandwich sets, loss sandwich and set inclusion", resolve_sandwich,
       run_sandwich},
      {"lb_linear_game", "proper-learner game on the bounded-halfspace shattering construction", resolve_lb_linear,
       run_lb_linear},
      {"oracle_query_sweep", "two-family sampling-oracle game, excess error per query budget", resolve_query_sweep,
       run_query_sweep},
      {"robust_vc_audit", "robust VC dimension against the Sauer-Shelah overhead bound", resolve_robust_vc,
       run_robust_vc},
      {"regularity_check", "alpha-regularity certificate for one hypothesis", resolve_regularity, run_regularity},
  };
  return all;
}

const Experiment* find_experiment(std::string_view name) {
  for (const auto& e : experiments()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ExperimentConfig validate(const ExperimentConfig& cfg) {
  const Experiment* e = find_experiment(cfg.experiment);
  require(e != nullptr, "unknown experiment: " + cfg.experiment);
  ExperimentConfig out = cfg;
  try {
    out.params = e->resolve(cfg.params);
  } catch (const json::exception& ex) {
    throw UsageError(std::string("bad params: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  return out;
}

RunRecord run(const ExperimentConfig& cfg) {
  RunRecord rec;
  rec.config = validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  rec.outcome = find_experiment(cfg.experiment)->run(rec.config.params, rec.config.seed);
  rec.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

Outcome run_experiment(std::string_view name, const json& params, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.experiment = std::string(name);
  cfg.params = params;
  cfg.seed = seed;
  return run(cfg).outcome;
}

}  // namespace tolrob::harness
