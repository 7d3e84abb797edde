#include "baselines.hpp"

#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace spato::baselines {

namespace {

constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

// rank[i*n + j] = position of fn j in task i's list (kNoRank if absent), etc.
struct Ranks {
  std::vector<std::uint32_t> task;           // m*n
  std::vector<std::vector<std::uint32_t>> fn;  // [n][m]
  std::vector<std::vector<std::uint32_t>> sp;  // [K][m]
};

Ranks build_ranks(const spa::MatchingProblem& problem,
                  const ranking::PreferenceProfile& profile) {
  const std::size_t m = problem.num_tasks;
  const std::size_t n = problem.fn_sp.size();
  const std::size_t num_sps = problem.sp_capacity.size();
  Ranks ranks;
  ranks.task.assign(m * n, kNoRank);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& prefs = profile.task_prefs[i];
    for (std::size_t r = 0; r < prefs.size(); ++r) {
      ranks.task[i * n + prefs[r]] = static_cast<std::uint32_t>(r);
    }
  }
  ranks.fn.assign(n, std::vector<std::uint32_t>(m, kNoRank));
  for (std::size_t j = 0; j < n; ++j) {
    const auto& prefs = profile.fn_prefs[j];
    for (std::size_t r = 0; r < prefs.size(); ++r) {
      ranks.fn[j][prefs[r]] = static_cast<std::uint32_t>(r);
    }
  }
  ranks.sp.assign(num_sps, std::vector<std::uint32_t>(m, kNoRank));
  for (std::size_t k = 0; k < num_sps; ++k) {
    const auto& prefs = profile.sp_prefs[k];
    for (std::size_t r = 0; r < prefs.size(); ++r) {
      ranks.sp[k][prefs[r]] = static_cast<std::uint32_t>(r);
    }
  }
  return ranks;
}

}  // namespace

spa::Matching run_deferred_acceptance(const spa::MatchingProblem& problem,
                                      const ranking::PreferenceProfile& profile) {
  const std::uint32_t m = problem.num_tasks;
  const std::uint32_t n = static_cast<std::uint32_t>(problem.fn_sp.size());
  const std::uint32_t num_sps = static_cast<std::uint32_t>(problem.sp_capacity.size());
  if (profile.task_prefs.size() != m || profile.fn_prefs.size() != n ||
      profile.sp_prefs.size() != num_sps) {
    throw std::invalid_argument("run_deferred_acceptance: profile shape mismatch");
  }
  const Ranks ranks = build_ranks(problem, profile);

  std::vector<std::uint32_t> task_fn(m, spa::Matching::kUnmatched);
  // Assignees ordered worst-last by the owner's own list.
  std::vector<std::set<std::pair<std::uint32_t, std::uint32_t>>> fn_assigned(n);
  std::vector<std::set<std::pair<std::uint32_t, std::uint32_t>>> sp_members(num_sps);
  std::vector<std::uint32_t> cursor(m, 0);
  std::deque<std::uint32_t> free_tasks;
  for (std::uint32_t i = 0; i < m; ++i) free_tasks.push_back(i);

  auto unassign = [&](std::uint32_t task) {
    const std::uint32_t j = task_fn[task];
    const std::uint32_t k = problem.fn_sp[j];
    fn_assigned[j].erase({ranks.fn[j][task], task});
    sp_members[k].erase({ranks.sp[k][task], task});
    task_fn[task] = spa::Matching::kUnmatched;
    free_tasks.push_back(task);
  };

  while (!free_tasks.empty()) {
    const std::uint32_t i = free_tasks.front();
    free_tasks.pop_front();
    const auto& prefs = profile.task_prefs[i];
    if (cursor[i] >= prefs.size()) continue;  // exhausted: stays unmatched
    const std::uint32_t j = prefs[cursor[i]++];
    const std::uint32_t k = problem.fn_sp[j];
    if (ranks.fn[j][i] == kNoRank || ranks.sp[k][i] == kNoRank) {
      // Owner does not rank this task; proposal cannot be held.
      free_tasks.push_back(i);
      continue;
    }
    task_fn[i] = j;
    fn_assigned[j].insert({ranks.fn[j][i], i});
    sp_members[k].insert({ranks.sp[k][i], i});
    if (fn_assigned[j].size() > problem.fn_quota[j]) {
      unassign(std::prev(fn_assigned[j].end())->second);
    } else if (sp_members[k].size() > problem.sp_capacity[k]) {
      unassign(std::prev(sp_members[k].end())->second);
    }
  }
  return spa::matching_from_assignment(problem, task_fn);
}

spa::Matching run_smeto(const Instance& instance) {
  const ranking::PreferenceProfile profile = ranking::build_smeto_profile(instance);
  return run_deferred_acceptance(spa::problem_from_instance(instance), profile);
}

spa::Matching run_random(const spa::MatchingProblem& problem,
                         const std::vector<std::vector<std::uint32_t>>& feasible_sets,
                         std::uint64_t rng_seed) {
  const std::uint32_t m = problem.num_tasks;
  if (feasible_sets.size() != m) {
    throw std::invalid_argument("run_random: feasible_sets shape mismatch");
  }
  Rng rng(rng_seed);
  std::vector<std::uint32_t> fn_free = problem.fn_quota;
  std::vector<std::uint32_t> sp_free = problem.sp_capacity;
  std::vector<std::uint32_t> task_fn(m, spa::Matching::kUnmatched);
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < m; ++i) {
    candidates.clear();
    for (std::uint32_t j : feasible_sets[i]) {
      if (fn_free[j] > 0 && sp_free[problem.fn_sp[j]] > 0) candidates.push_back(j);
    }
    if (candidates.empty()) continue;
    const std::uint32_t j =
        candidates[rng.uniform_int(0, static_cast<std::uint64_t>(candidates.size()) - 1)];
    task_fn[i] = j;
    --fn_free[j];
    --sp_free[problem.fn_sp[j]];
  }
  return spa::matching_from_assignment(problem, task_fn);
}

spa::Matching run_random(const Instance& instance, std::uint64_t rng_seed) {
  return run_random(spa::problem_from_instance(instance), instance.feasible_sets, rng_seed);
}

}  // namespace spato::baselines
