#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ranking.hpp"
#include "scenario.hpp"
#include "spa.hpp"
#include "test_util.hpp"

using namespace spato;

namespace {

constexpr std::uint32_t kFree = spa::Matching::kUnmatched;

// One provider owning both nodes; sp capacity may undercut the quota sum.
spa::MatchingProblem two_node_problem(std::uint32_t num_tasks, std::uint32_t quota0,
                                      std::uint32_t quota1, std::uint32_t capacity) {
  spa::MatchingProblem p;
  p.num_tasks = num_tasks;
  p.fn_sp = {0, 0};
  p.fn_quota = {quota0, quota1};
  p.sp_capacity = {capacity};
  return p;
}

// All tasks share the given task list; fn lists mirror the sp list.
ranking::PreferenceProfile uniform_profile(std::uint32_t num_tasks,
                                           std::vector<std::uint32_t> task_list,
                                           std::vector<std::uint32_t> sp_list,
                                           std::size_t num_fns) {
  ranking::PreferenceProfile profile;
  profile.task_prefs.assign(num_tasks, task_list);
  profile.sp_prefs = {std::move(sp_list)};
  profile.fn_prefs.assign(num_fns, profile.sp_prefs[0]);
  return profile;
}

bool same_assignment(const spa::Matching& a, const spa::Matching& b) {
  return a.task_to_fn == b.task_to_fn;
}

}  // namespace

TEST_CASE("matching_from_assignment rebuilds consistent views") {
  const auto problem = two_node_problem(3, 1, 2, 3);
  const auto m = spa::matching_from_assignment(problem, {1, kFree, 0});
  CHECK(m.matched_count() == 2);
  CHECK(m.fn_to_tasks[0] == std::vector<std::uint32_t>{2});
  CHECK(m.fn_to_tasks[1] == std::vector<std::uint32_t>{0});
  CHECK(m.sp_load[0] == 2);
  CHECK_THROWS_AS(spa::matching_from_assignment(problem, {7, kFree, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spa::matching_from_assignment(problem, {0, 1}),
                  std::invalid_argument);  // wrong length
}

TEST_CASE("spa: capacity-bound provider keeps its best two tasks") {
  // Quotas (1, 2) but capacity 2: everyone wants node 1; the provider ranks
  // 0 > 1 > 2. Tasks 0 and 1 take node 1; task 2 is pruned everywhere once
  // the provider fills.
  const auto problem = two_node_problem(3, 1, 2, 2);
  const auto profile = uniform_profile(3, {1, 0}, {0, 1, 2}, 2);
  const auto m = spa::run_spato(problem, profile);
  CHECK(m.task_to_fn == std::vector<std::uint32_t>{1, 1, kFree});
  CHECK(m.sp_load[0] == 2);
  CHECK(spa::check_conditions(problem, profile, m).all_ok());
  CHECK(spa::verify_stability(problem, profile, m).stable);
}

TEST_CASE("spa: a better proposer displaces the provisional assignee") {
  // Both tasks chase node 0 (quota 1); the owner prefers task 1, so task 0
  // is bumped and lands on node 1.
  const auto problem = two_node_problem(2, 1, 1, 2);
  const auto profile = uniform_profile(2, {0, 1}, {1, 0}, 2);
  const auto m = spa::run_spato(problem, profile);
  CHECK(m.task_to_fn == std::vector<std::uint32_t>{1, 0});
  CHECK(spa::verify_stability(problem, profile, m).stable);
}

TEST_CASE("spa: zero-quota node is never used") {
  const auto problem = two_node_problem(2, 0, 2, 2);
  const auto profile = uniform_profile(2, {0, 1}, {0, 1}, 2);
  const auto m = spa::run_spato(problem, profile);
  CHECK(m.task_to_fn == std::vector<std::uint32_t>{1, 1});
  CHECK(m.fn_to_tasks[0].empty());
}

TEST_CASE("spa: tasks with empty lists stay unmatched") {
  const auto problem = two_node_problem(2, 1, 1, 2);
  ranking::PreferenceProfile profile = uniform_profile(2, {0, 1}, {0, 1}, 2);
  profile.task_prefs[1].clear();
  const auto m = spa::run_spato(problem, profile);
  CHECK(m.task_to_fn[0] == 0);
  CHECK(m.task_to_fn[1] == kFree);
}

TEST_CASE("spa: fifo and lifo worklists reach the same matching") {
  const auto problem = two_node_problem(3, 1, 2, 2);
  const auto profile = uniform_profile(3, {1, 0}, {0, 1, 2}, 2);
  const auto fifo = spa::run_spato(problem, profile, spa::Worklist::kFifo);
  const auto lifo = spa::run_spato(problem, profile, spa::Worklist::kLifo);
  CHECK(same_assignment(fifo, lifo));
}

TEST_CASE("spa: profile shape mismatch is rejected") {
  const auto problem = two_node_problem(2, 1, 1, 2);
  const auto profile = uniform_profile(3, {0, 1}, {0, 1, 2}, 2);
  CHECK_THROWS_AS(spa::run_spato(problem, profile), std::invalid_argument);
}

TEST_CASE("conditions: violations are reported with detail") {
  const auto problem = two_node_problem(3, 1, 2, 2);
  const auto profile = uniform_profile(3, {1, 0}, {0, 1, 2}, 2);

  SUBCASE("quota violation") {
    // Hand-corrupted views: node 0 holds two tasks against quota 1.
    spa::Matching m = spa::matching_from_assignment(problem, {0, 0, kFree});
    const auto report = spa::check_conditions(problem, profile, m);
    CHECK_FALSE(report.fn_within_quota);
    CHECK_FALSE(report.all_ok());
    CHECK_FALSE(report.detail.empty());
  }
  SUBCASE("capacity violation") {
    spa::Matching m = spa::matching_from_assignment(problem, {1, 1, 0});
    const auto report = spa::check_conditions(problem, profile, m);
    CHECK(report.fn_within_quota);
    CHECK_FALSE(report.sp_within_capacity);
  }
  SUBCASE("inconsistent views") {
    spa::Matching m = spa::matching_from_assignment(problem, {1, kFree, kFree});
    m.fn_to_tasks[0].push_back(2);  // node claims a task that never chose it
    const auto report = spa::check_conditions(problem, profile, m);
    CHECK_FALSE(report.views_consistent);
  }
  SUBCASE("unacceptable pair") {
    ranking::PreferenceProfile narrow = profile;
    narrow.task_prefs[2] = {};  // task 2 finds no node acceptable
    spa::Matching m = spa::matching_from_assignment(problem, {1, kFree, 0});
    const auto report = spa::check_conditions(problem, narrow, m);
    CHECK_FALSE(report.pairs_feasible);
  }
  SUBCASE("valid matching passes all four") {
    spa::Matching m = spa::matching_from_assignment(problem, {1, 1, kFree});
    CHECK(spa::check_conditions(problem, profile, m).all_ok());
  }
}

TEST_CASE("blocking pairs: the three admission clauses") {
  // Nodes 0,1 of one provider; task lists [0,1]; owner ranks 0 > 1 > 2.
  const auto problem = two_node_problem(3, 1, 1, 2);
  const auto profile = uniform_profile(3, {0, 1}, {0, 1, 2}, 2);

  SUBCASE("free node and free capacity admit a free task") {
    const auto m = spa::matching_from_assignment(problem, {kFree, kFree, kFree});
    CHECK(spa::is_blocking_pair(problem, profile, m, 0, 0));
    CHECK(spa::is_blocking_pair(problem, profile, m, 2, 1));
  }
  SUBCASE("full node admits only a strictly better task") {
    // Node 0 holds task 1; capacity has room.
    const auto m = spa::matching_from_assignment(problem, {kFree, 0, kFree});
    CHECK(spa::is_blocking_pair(problem, profile, m, 0, 0));        // 0 beats 1
    CHECK_FALSE(spa::is_blocking_pair(problem, profile, m, 2, 0));  // 2 does not
    CHECK(spa::is_blocking_pair(problem, profile, m, 2, 1));        // node 1 free
  }
  SUBCASE("full provider admits only a task beating its worst assignee") {
    // Capacity 2 consumed by tasks 1, 2; node 1 would have quota room.
    const auto tight = two_node_problem(3, 2, 1, 2);
    const auto prof = uniform_profile(3, {0, 1}, {0, 1, 2}, 2);
    const auto m = spa::matching_from_assignment(tight, {kFree, 0, 0});
    CHECK(spa::is_blocking_pair(tight, prof, m, 0, 1));  // 0 beats worst (2)
    // Same geometry but the provider already holds its two best tasks.
    const auto m2 = spa::matching_from_assignment(tight, {0, 0, kFree});
    CHECK_FALSE(spa::is_blocking_pair(tight, prof, m2, 2, 1));
  }
  SUBCASE("full node inside a full provider follows the node clause") {
    // Node 0 (quota 1) holds task 0, node 1 holds task 1: provider full.
    // Task 2 beats nobody; task 0 never blocks with its own node.
    const auto m = spa::matching_from_assignment(problem, {0, 1, kFree});
    CHECK_FALSE(spa::is_blocking_pair(problem, profile, m, 2, 0));
    CHECK_FALSE(spa::is_blocking_pair(problem, profile, m, 2, 1));
    CHECK_FALSE(spa::is_blocking_pair(problem, profile, m, 0, 0));
    CHECK(spa::verify_stability(problem, profile, m).stable);
  }
  SUBCASE("a matched task only blocks with strictly better nodes") {
    // Task 0 sits on node 0, its first choice: nothing blocks for it.
    const auto m = spa::matching_from_assignment(problem, {0, kFree, kFree});
    CHECK_FALSE(spa::is_blocking_pair(problem, profile, m, 0, 1));
  }
  SUBCASE("unacceptable nodes never block") {
    ranking::PreferenceProfile narrow = profile;
    narrow.task_prefs[2] = {1};  // node 0 unacceptable to task 2
    const auto m = spa::matching_from_assignment(problem, {kFree, kFree, kFree});
    CHECK_FALSE(spa::is_blocking_pair(problem, narrow, m, 2, 0));
    CHECK(spa::is_blocking_pair(problem, narrow, m, 2, 1));
  }
}

TEST_CASE("verify_stability lists blocking pairs in ascending order") {
  const auto problem = two_node_problem(3, 1, 1, 2);
  const auto profile = uniform_profile(3, {0, 1}, {0, 1, 2}, 2);
  const auto m = spa::matching_from_assignment(problem, {kFree, kFree, kFree});
  const auto report = spa::verify_stability(problem, profile, m);
  CHECK_FALSE(report.stable);
  REQUIRE(report.blocking_pairs.size() >= 2);
  for (std::size_t i = 1; i < report.blocking_pairs.size(); ++i) {
    const auto& a = report.blocking_pairs[i - 1];
    const auto& b = report.blocking_pairs[i];
    CHECK((a.task_id < b.task_id ||
           (a.task_id == b.task_id && a.fn_id < b.fn_id)));
  }
}

TEST_CASE("enumeration oracle: exact stable set of the capacity-bound case") {
  const auto problem = two_node_problem(3, 1, 2, 2);
  const auto profile = uniform_profile(3, {1, 0}, {0, 1, 2}, 2);
  const auto all = spa::enumerate_stable_matchings(problem, profile);
  // Hand enumeration: provider must be saturated (else an unmatched task
  // blocks), leaving exactly {0->1, 1->1} and {0->1, 1->0}.
  REQUIRE(all.size() == 2);
  std::vector<std::vector<std::uint32_t>> found;
  for (const auto& m : all) found.push_back(m.task_to_fn);
  std::sort(found.begin(), found.end());
  CHECK(found[0] == std::vector<std::uint32_t>{1, 0, kFree});
  CHECK(found[1] == std::vector<std::uint32_t>{1, 1, kFree});

  // The algorithm returns the task-optimal element of that set.
  const auto m = spa::run_spato(problem, profile);
  CHECK(m.task_to_fn == std::vector<std::uint32_t>{1, 1, kFree});
}

TEST_CASE("enumeration oracle: size guard") {
  spa::MatchingProblem big;
  big.num_tasks = 9;
  big.fn_sp = {0};
  big.fn_quota = {9};
  big.sp_capacity = {9};
  ranking::PreferenceProfile profile;
  profile.task_prefs.assign(9, {0});
  profile.sp_prefs = {{0, 1, 2, 3, 4, 5, 6, 7, 8}};
  profile.fn_prefs = {profile.sp_prefs[0]};
  CHECK_THROWS_AS(spa::enumerate_stable_matchings(big, profile), std::length_error);
}

TEST_CASE("spa on a materialized instance is valid, stable and task-optimal") {
  const Instance inst = testutil::tiny_instance();
  const auto problem = spa::problem_from_instance(inst);
  const auto profile = ranking::build_spato_profile(inst);
  const auto m = spa::run_spato(problem, profile);
  CHECK(spa::check_conditions(problem, profile, m).all_ok());
  CHECK(spa::verify_stability(problem, profile, m).stable);
  CHECK(m.matched_count() == 4);  // capacity 6 over 4 tasks

  // Task-optimality against the exhaustive oracle.
  const auto all = spa::enumerate_stable_matchings(problem, profile);
  bool found = false;
  for (const auto& other : all) {
    if (same_assignment(other, m)) found = true;
    for (std::uint32_t i = 0; i < problem.num_tasks; ++i) {
      const auto rank_of = [&](std::uint32_t fn) -> std::size_t {
        const auto& prefs = profile.task_prefs[i];
        if (fn == kFree) return prefs.size();
        return static_cast<std::size_t>(
            std::find(prefs.begin(), prefs.end(), fn) - prefs.begin());
      };
      CHECK(rank_of(m.task_to_fn[i]) <= rank_of(other.task_to_fn[i]));
    }
  }
  CHECK(found);
}

TEST_CASE("spa: generated instances stay stable across worklists") {
  scenario::ScenarioConfig cfg;
  cfg.num_sps = 2;
  cfg.fns_per_sp = 2;
  cfg.vru_range = {1.0, 2.0};
  cfg.num_tasks = 6;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = scenario::generate(cfg, seed);
    const auto problem = spa::problem_from_instance(inst);
    const auto profile = ranking::build_spato_profile(inst);
    const auto fifo = spa::run_spato(problem, profile, spa::Worklist::kFifo);
    const auto lifo = spa::run_spato(problem, profile, spa::Worklist::kLifo);
    CHECK(same_assignment(fifo, lifo));
    CHECK(spa::check_conditions(problem, profile, fifo).all_ok());
    CHECK(spa::verify_stability(problem, profile, fifo).stable);
  }
}
