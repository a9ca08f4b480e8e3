#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "srsim/engine.hpp"

using namespace srsim;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

ScenarioSpec toy_spec(ScenarioKind kind, PolicyKind policy) {
  ScenarioSpec spec;
  spec.kind = kind;
  apply_toy_geometry(spec);
  spec.action_set = toy_action_set();
  spec.default_action_index = 3;  // (-82, 20)
  spec.policies = {policy, policy};
  spec.rate_table = default_rate_table();
  return spec;
}

ScenarioSpec random_spec(int num_bss, int t, int deployments) {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::random_deploy;
  spec.num_bss = num_bss;
  spec.d_ap_ap = 6.0;
  spec.action_set = full_action_grid();
  spec.default_action_index = 11;  // (-82, 20)
  spec.policies.assign(num_bss, PolicyKind::regret_matching);
  spec.t_iterations = t;
  spec.num_deployments = deployments;
  spec.rate_table = default_rate_table();
  return spec;
}

AbstractGame prisoners_dilemma() {
  AbstractGame g;
  g.num_actions = {2, 2};
  g.payoffs = {{0.6, 0.0, 1.0, 0.2}, {0.6, 1.0, 0.0, 0.2}};
  return g;
}

}  // namespace

TEST_CASE("toy geometry is pinned") {
  ScenarioSpec strong = toy_spec(ScenarioKind::toy_strong, PolicyKind::static_policy);
  REQUIRE(strong.d_ap_ap == 5.0);
  Rng rng(0);
  const Deployment dep = build_deployment(strong, rng);
  REQUIRE(dep.bss_list[0].ap.x == 0.0);
  REQUIRE(dep.bss_list[1].ap.x == 5.0);
  REQUIRE(dep.bss_list[0].sta.x == -2.0);
  REQUIRE(dep.bss_list[1].sta.x == 7.0);
  REQUIRE(dep.bss_list[0].sta.y == 0.0);

  ScenarioSpec weak = toy_spec(ScenarioKind::toy_weak, PolicyKind::static_policy);
  REQUIRE(weak.d_ap_ap == 4.0);
  weak.d_ap_ap = 9.0;  // toys always snap back to the fixed geometry
  apply_toy_geometry(weak);
  REQUIRE(weak.d_ap_ap == 4.0);
}

TEST_CASE("random deployments draw the station on the configured annulus") {
  ScenarioSpec spec = random_spec(4, 10, 1);
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const Deployment dep = build_deployment(spec, rng);
    for (int i = 0; i < dep.num_bss(); ++i) {
      const double r = distance(dep.bss_list[i].ap, dep.bss_list[i].sta);
      REQUIRE(r >= spec.d_ap_sta_min);
      REQUIRE(r <= spec.d_ap_sta_max);
    }
  }
  ScenarioSpec abstract;
  abstract.kind = ScenarioKind::abstract_game;
  REQUIRE_THROWS_AS(build_deployment(abstract, rng), std::logic_error);
}

TEST_CASE("calibration gate accepts the committed channel and rejects others") {
  ScenarioSpec weak = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  REQUIRE_NOTHROW(verify_toy_calibration(weak));
  ScenarioSpec strong = toy_spec(ScenarioKind::toy_strong, PolicyKind::regret_matching);
  REQUIRE_NOTHROW(verify_toy_calibration(strong));

  weak.path_loss.exponent = 2.0;  // free-space-like: everyone hears everyone
  REQUIRE_THROWS_WITH(verify_toy_calibration(weak), ContainsSubstring("calibration gate violated"));
  strong.path_loss.exponent = 2.0;
  REQUIRE_THROWS_WITH(verify_toy_calibration(strong),
                      ContainsSubstring("calibration gate violated"));
}

TEST_CASE("episode validation") {
  ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  spec.t_iterations = 0;
  REQUIRE_THROWS_AS(run_episode(spec), std::invalid_argument);
  spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  spec.action_set.clear();
  REQUIRE_THROWS_AS(run_episode(spec), std::invalid_argument);
  spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  spec.default_action_index = 4;
  REQUIRE_THROWS_AS(run_episode(spec), std::invalid_argument);
  spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  spec.policies = {PolicyKind::regret_matching};
  REQUIRE_THROWS_AS(run_episode(spec), std::invalid_argument);
}

TEST_CASE("static policy plays the default action forever") {
  const ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::static_policy);
  const EpisodeResult r = run_episode(spec);
  REQUIRE(r.records.size() == 200);
  for (const IterationRecord& rec : r.records) {
    REQUIRE(rec.action_index == std::vector<int>{3, 3});
    REQUIRE(rec.throughput_mbps[0] == 60.9375);
    REQUIRE(rec.throughput_mbps[1] == 60.9375);
    REQUIRE(rec.reward[0] == 0.5);
  }
  REQUIRE(r.summary.mean_throughput_mbps == 60.9375);
  REQUIRE(r.summary.min_bss_throughput_mbps == 60.9375);
  REQUIRE(r.summary.action_histogram[0] == std::vector<int>{0, 0, 0, 200});
  REQUIRE(r.summary.action_histogram[1] == std::vector<int>{0, 0, 0, 200});
}

TEST_CASE("regret matching on the weak scenario finds the low-power reuse point") {
  const ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  const EpisodeResult r = run_episode(spec);

  // Both agents hold the conservative default through t = 14, then switch
  // together to (-72, 10) and never look back.
  REQUIRE(r.records[0].action_index == std::vector<int>{3, 3});
  REQUIRE(r.records[13].action_index == std::vector<int>{3, 3});
  REQUIRE(r.records[14].action_index == std::vector<int>{0, 0});
  REQUIRE(r.records[199].action_index == std::vector<int>{0, 0});
  for (int i : {0, 1})
    REQUIRE(r.summary.action_histogram[i] == std::vector<int>{186, 0, 0, 14});

  REQUIRE(r.summary.per_bss_mean_throughput_mbps[0] == 85.873125);
  REQUIRE(r.summary.per_bss_mean_throughput_mbps[1] == 85.873125);
  REQUIRE(r.summary.mean_throughput_mbps == 85.873125);
  REQUIRE(r.summary.min_bss_throughput_mbps == 85.873125);

  REQUIRE_THAT(r.summary.final_external_regret[0], WithinAbs(59.08, 1e-9));
  REQUIRE_THAT(r.summary.final_internal_regret[0], WithinAbs(52.08, 1e-9));
}

TEST_CASE("regret matching on the strong scenario reaches full reuse") {
  const ScenarioSpec spec = toy_spec(ScenarioKind::toy_strong, PolicyKind::regret_matching);
  const EpisodeResult r = run_episode(spec);

  REQUIRE(r.records[5].action_index == std::vector<int>{3, 3});
  REQUIRE(r.records[6].action_index == std::vector<int>{1, 1});
  REQUIRE(r.records[199].action_index == std::vector<int>{1, 1});
  for (int i : {0, 1})
    REQUIRE(r.summary.action_histogram[i] == std::vector<int>{0, 194, 0, 6});

  REQUIRE(r.summary.mean_throughput_mbps == 120.046875);
  REQUIRE(r.summary.min_bss_throughput_mbps == 120.046875);

  REQUIRE_THAT(r.summary.final_external_regret[0], WithinAbs(3.0, 1e-12));
  REQUIRE_THAT(r.summary.final_internal_regret[0], WithinAbs(3.0, 1e-12));
  REQUIRE_THAT(r.summary.final_internal_regret[1], WithinAbs(3.0, 1e-12));
}

TEST_CASE("time-averaged truth regret shrinks with the horizon") {
  for (ScenarioKind kind : {ScenarioKind::toy_weak, ScenarioKind::toy_strong}) {
    ScenarioSpec spec = toy_spec(kind, PolicyKind::regret_matching);
    spec.t_iterations = 25;
    const double early = run_episode(spec).summary.final_internal_regret[0] / 25.0;
    spec.t_iterations = 200;
    const double late = run_episode(spec).summary.final_internal_regret[0] / 200.0;
    REQUIRE(late < early);
  }
}

TEST_CASE("records carry consistent agent-side feedback") {
  const ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  const EpisodeResult r = run_episode(spec);
  int t = 1;
  for (const IterationRecord& rec : r.records) {
    REQUIRE(rec.t == t++);
    for (int i = 0; i < 2; ++i) {
      REQUIRE(rec.hypothetical[i].size() == 4);
      REQUIRE(rec.hypothetical[i][rec.action_index[i]] == rec.reward[i]);
      for (double h : rec.hypothetical[i]) {
        REQUIRE(h >= 0.0);
        REQUIRE(h <= 1.0);
      }
    }
  }
}

TEST_CASE("snapshots are captured only on request and only for learners") {
  ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  spec.policies = {PolicyKind::static_policy, PolicyKind::regret_matching};
  const EpisodeResult without = run_episode(spec, false);
  REQUIRE(without.snapshots.empty());
  const EpisodeResult with = run_episode(spec, true);
  REQUIRE(with.snapshots.size() == 200);
  REQUIRE(with.snapshots[0][0].pi.empty());        // static slot left blank
  REQUIRE(with.snapshots[0][1].pi.size() == 4);    // learner snapshot
  REQUIRE(with.snapshots[0][1].q.size() == 16);
  REQUIRE(with.snapshots[0][1].last_action == 3);  // boots on the default
}

TEST_CASE("episodes are deterministic and toy trajectories are seed independent") {
  const ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  const EpisodeResult a = run_episode(spec);
  const EpisodeResult b = run_episode(spec);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t t = 0; t < a.records.size(); ++t) {
    REQUIRE(a.records[t].action_index == b.records[t].action_index);
    REQUIRE(a.records[t].reward == b.records[t].reward);
    REQUIRE(a.records[t].hypothetical == b.records[t].hypothetical);
  }

  // The deterministic toy paths never hit an RNG tie-break, so the seed
  // cannot change the trajectory.
  ScenarioSpec other = spec;
  other.seed = 99;
  const EpisodeResult c = run_episode(other);
  for (std::size_t t = 0; t < a.records.size(); ++t)
    REQUIRE(a.records[t].action_index == c.records[t].action_index);
}

TEST_CASE("epsilon-greedy toy episodes stay well formed") {
  const ScenarioSpec spec = toy_spec(ScenarioKind::toy_weak, PolicyKind::eps_greedy);
  const EpisodeResult r = run_episode(spec);
  REQUIRE(r.summary.mean_throughput_mbps > 0.0);
  REQUIRE(r.summary.mean_throughput_mbps <= 121.875);
  int total = 0;
  for (int c : r.summary.action_histogram[0]) total += c;
  REQUIRE(total == 200);
}

TEST_CASE("measurement noise perturbs estimates but not their range") {
  ScenarioSpec clean = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  clean.t_iterations = 30;
  ScenarioSpec noisy = clean;
  noisy.learning.measurement_noise_db = 6.0;
  const EpisodeResult a = run_episode(clean);
  const EpisodeResult b = run_episode(noisy);

  // The estimator quantizes its inputs through thresholds, so any single
  // reading may survive the noise; across the episode some estimate must move.
  bool diverged = false;
  for (std::size_t t = 0; t < a.records.size() && !diverged; ++t)
    diverged = a.records[t].hypothetical != b.records[t].hypothetical;
  REQUIRE(diverged);

  for (const IterationRecord& rec : b.records)
    for (const auto& hyp : rec.hypothetical)
      for (double h : hyp) {
        REQUIRE(h >= 0.0);
        REQUIRE(h <= 1.0);
      }

  // Noise comes from a seeded substream: the noisy run itself is repeatable.
  const EpisodeResult b2 = run_episode(noisy);
  for (std::size_t t = 0; t < b.records.size(); ++t) {
    REQUIRE(b.records[t].hypothetical == b2.records[t].hypothetical);
    REQUIRE(b.records[t].action_index == b2.records[t].action_index);
  }
}

TEST_CASE("campaigns aggregate per-deployment summaries") {
  const ScenarioSpec spec = random_spec(3, 40, 4);
  const CampaignResult c = run_campaign(spec);
  REQUIRE(c.per_deployment.size() == 4);
  double mean_sum = 0.0, min_sum = 0.0;
  for (const RunSummary& s : c.per_deployment) {
    mean_sum += s.mean_throughput_mbps;
    min_sum += s.min_bss_throughput_mbps;
  }
  REQUIRE_THAT(c.mean_of_means_mbps, WithinAbs(mean_sum / 4.0, 1e-12));
  REQUIRE_THAT(c.mean_of_mins_mbps, WithinAbs(min_sum / 4.0, 1e-12));

  // Deployment substreams line up with single-episode runs.
  const EpisodeResult third = run_episode(spec, false, 2);
  REQUIRE(third.summary.mean_throughput_mbps == c.per_deployment[2].mean_throughput_mbps);
  REQUIRE(third.summary.min_bss_throughput_mbps == c.per_deployment[2].min_bss_throughput_mbps);

  const CampaignResult again = run_campaign(spec);
  REQUIRE(again.mean_of_means_mbps == c.mean_of_means_mbps);
  REQUIRE(again.mean_of_mins_mbps == c.mean_of_mins_mbps);

  ScenarioSpec seeded = spec;
  seeded.seed = 2;
  REQUIRE(run_campaign(seeded).mean_of_means_mbps != c.mean_of_means_mbps);
}

TEST_CASE("campaign validation") {
  ScenarioSpec toy = toy_spec(ScenarioKind::toy_weak, PolicyKind::regret_matching);
  REQUIRE_THROWS_AS(run_campaign(toy), std::invalid_argument);
  ScenarioSpec spec = random_spec(2, 10, 0);
  REQUIRE_THROWS_AS(run_campaign(spec), std::invalid_argument);
}

TEST_CASE("abstract-game episodes run through the same entry point") {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::abstract_game;
  spec.game = prisoners_dilemma();
  spec.policies = {PolicyKind::regret_matching, PolicyKind::regret_matching};
  spec.t_iterations = 300;
  const EpisodeResult r = run_episode(spec);
  REQUIRE(r.records.size() == 300);
  REQUIRE(r.records.back().action_index == std::vector<int>{1, 1});
  REQUIRE(r.records.back().reward[0] == 0.2);
  REQUIRE(r.records.back().throughput_mbps[0] == 0.2);
  REQUIRE(r.summary.final_internal_regret[0] / 300.0 < 0.05);

  spec.policies = {PolicyKind::static_policy, PolicyKind::regret_matching};
  REQUIRE_THROWS_AS(run_episode(spec), std::invalid_argument);
}

TEST_CASE("omega resolution follows the network size") {
  ScenarioSpec spec = random_spec(5, 10, 1);
  REQUIRE(resolved_omega(spec) == 10.0);
  spec.learning.omega = 7.5;
  REQUIRE(resolved_omega(spec) == 7.5);
}
