#include "spa.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace spato::spa {

namespace {

constexpr std::uint32_t kNoRank = 0xFFFFFFFFu;

// Rank = position in a preference list; lower is better, kNoRank is "not
// ranked" and compares as worst.
struct RankTables {
  std::size_t fn_count = 0;
  std::vector<std::uint32_t> task_rank;              // [task * n + fn]
  std::vector<std::vector<std::uint32_t>> fn_rank;   // [fn][task]
  std::vector<std::vector<std::uint32_t>> sp_rank;   // [sp][task]
};

RankTables build_ranks(const MatchingProblem& problem,
                       const ranking::PreferenceProfile& profile) {
  const std::size_t m = problem.num_tasks;
  const std::size_t n = problem.fn_quota.size();
  RankTables ranks;
  ranks.fn_count = n;
  ranks.task_rank.assign(m * n, kNoRank);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& lst = profile.task_prefs[i];
    for (std::size_t pos = 0; pos < lst.size(); ++pos) {
      ranks.task_rank[i * n + lst[pos]] = static_cast<std::uint32_t>(pos);
    }
  }
  ranks.fn_rank.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    ranks.fn_rank[j].assign(m, kNoRank);
    const auto& lst = profile.fn_prefs[j];
    for (std::size_t pos = 0; pos < lst.size(); ++pos) {
      ranks.fn_rank[j][lst[pos]] = static_cast<std::uint32_t>(pos);
    }
  }
  ranks.sp_rank.assign(problem.sp_capacity.size(), {});
  for (std::size_t k = 0; k < problem.sp_capacity.size(); ++k) {
    ranks.sp_rank[k].assign(m, kNoRank);
    const auto& lst = profile.sp_prefs[k];
    for (std::size_t pos = 0; pos < lst.size(); ++pos) {
      ranks.sp_rank[k][lst[pos]] = static_cast<std::uint32_t>(pos);
    }
  }
  return ranks;
}

void validate_shapes(const MatchingProblem& problem,
                     const ranking::PreferenceProfile& profile) {
  if (problem.fn_quota.size() != problem.fn_sp.size()) {
    throw std::invalid_argument("problem: fn_quota/fn_sp size mismatch");
  }
  for (std::uint32_t sp : problem.fn_sp) {
    if (sp >= problem.sp_capacity.size()) {
      throw std::invalid_argument("problem: fn owned by unknown sp");
    }
  }
  if (profile.task_prefs.size() != problem.num_tasks ||
      profile.fn_prefs.size() != problem.fn_quota.size() ||
      profile.sp_prefs.size() != problem.sp_capacity.size()) {
    throw std::invalid_argument("profile: shape does not match problem");
  }
  for (const auto& lst : profile.task_prefs) {
    for (std::uint32_t fn : lst) {
      if (fn >= problem.fn_quota.size()) {
        throw std::invalid_argument("profile: task ranks unknown fn");
      }
    }
  }
}

}  // namespace

MatchingProblem problem_from_instance(const Instance& instance) {
  MatchingProblem problem;
  problem.num_tasks = static_cast<std::uint32_t>(instance.tasks.size());
  problem.fn_sp.reserve(instance.fns.size());
  problem.fn_quota.reserve(instance.fns.size());
  for (const FogNode& fn : instance.fns) {
    problem.fn_sp.push_back(fn.sp_id);
    problem.fn_quota.push_back(fn.vru_count);
  }
  problem.sp_capacity.reserve(instance.sps.size());
  for (const ServiceProvider& sp : instance.sps) {
    problem.sp_capacity.push_back(sp.capacity);
  }
  return problem;
}

std::uint32_t Matching::matched_count() const {
  std::uint32_t count = 0;
  for (std::uint32_t fn : task_to_fn) count += (fn != kUnmatched) ? 1 : 0;
  return count;
}

Matching matching_from_assignment(
    const MatchingProblem& problem,
    const std::vector<std::uint32_t>& task_to_fn) {
  if (task_to_fn.size() != problem.num_tasks) {
    throw std::invalid_argument("matching: task count mismatch");
  }
  Matching matching;
  matching.task_to_fn = task_to_fn;
  matching.fn_to_tasks.assign(problem.fn_quota.size(), {});
  matching.sp_load.assign(problem.sp_capacity.size(), 0);
  for (std::uint32_t i = 0; i < task_to_fn.size(); ++i) {
    const std::uint32_t j = task_to_fn[i];
    if (j == Matching::kUnmatched) continue;
    if (j >= problem.fn_quota.size()) {
      throw std::invalid_argument("matching: task assigned to unknown fn");
    }
    matching.fn_to_tasks[j].push_back(i);
    matching.sp_load[problem.fn_sp[j]]++;
  }
  return matching;
}

Matching run_spato(const MatchingProblem& problem,
                   const ranking::PreferenceProfile& profile,
                   Worklist worklist) {
  validate_shapes(problem, profile);
  const std::size_t m = problem.num_tasks;
  const std::size_t n = problem.fn_quota.size();
  const std::size_t q = problem.sp_capacity.size();
  const RankTables ranks = build_ranks(problem, profile);

  std::vector<std::vector<std::uint32_t>> sp_fns(q);
  for (std::uint32_t j = 0; j < n; ++j) sp_fns[problem.fn_sp[j]].push_back(j);

  std::vector<char> deleted(m * n, 0);
  std::vector<std::size_t> cursor(m, 0);
  std::vector<std::uint32_t> task_to_fn(m, Matching::kUnmatched);
  // Provisional assignees ordered worst-last by the owning SP's list; the
  // profile keeps every fn list consistent with it.
  using RankedTask = std::pair<std::uint32_t, std::uint32_t>;  // (rank, task)
  std::vector<std::set<RankedTask>> assigned_fn(n);
  std::vector<std::set<RankedTask>> sp_members(q);
  std::vector<std::uint32_t> sp_load(q, 0);
  // List positions beyond these tails are already deleted.
  std::vector<std::size_t> fn_tail(n);
  std::vector<std::size_t> sp_tail(q);
  for (std::size_t j = 0; j < n; ++j) fn_tail[j] = profile.fn_prefs[j].size();
  for (std::size_t k = 0; k < q; ++k) sp_tail[k] = profile.sp_prefs[k].size();

  std::deque<std::uint32_t> free_tasks;
  for (std::uint32_t i = 0; i < m; ++i) free_tasks.push_back(i);

  auto sp_rank_of = [&](std::uint32_t k, std::uint32_t i) {
    return ranks.sp_rank[k][i];
  };

  auto unassign = [&](std::uint32_t task) {
    const std::uint32_t j = task_to_fn[task];
    const std::uint32_t k = problem.fn_sp[j];
    assigned_fn[j].erase({sp_rank_of(k, task), task});
    sp_members[k].erase({sp_rank_of(k, task), task});
    sp_load[k]--;
    task_to_fn[task] = Matching::kUnmatched;
    free_tasks.push_back(task);
  };

  // Delete every entry of fn j's list strictly worse than its current worst
  // assignee (everything, if it has none). Removes the pair from both sides.
  auto prune_fn = [&](std::uint32_t j) {
    const auto& lst = profile.fn_prefs[j];
    std::size_t start = 0;
    if (!assigned_fn[j].empty()) {
      const std::uint32_t worst = assigned_fn[j].rbegin()->second;
      const std::uint32_t worst_rank = ranks.fn_rank[j][worst];
      if (worst_rank == kNoRank) return;  // defensively: nothing is worse
      start = static_cast<std::size_t>(worst_rank) + 1;
    }
    for (std::size_t pos = start; pos < fn_tail[j]; ++pos) {
      deleted[static_cast<std::size_t>(lst[pos]) * n + j] = 1;
    }
    if (start < fn_tail[j]) fn_tail[j] = start;
  };

  // Remove every task strictly worse than the SP's worst assignee from its
  // list, deleting those tasks' pairs with all of this SP's FNs.
  auto prune_sp = [&](std::uint32_t k) {
    const auto& lst = profile.sp_prefs[k];
    std::size_t start = 0;
    if (!sp_members[k].empty()) {
      const std::uint32_t worst = sp_members[k].rbegin()->second;
      const std::uint32_t worst_rank = ranks.sp_rank[k][worst];
      if (worst_rank == kNoRank) return;
      start = static_cast<std::size_t>(worst_rank) + 1;
    }
    for (std::size_t pos = start; pos < sp_tail[k]; ++pos) {
      const std::uint32_t task = lst[pos];
      for (std::uint32_t j : sp_fns[k]) {
        if (ranks.task_rank[static_cast<std::size_t>(task) * n + j] != kNoRank) {
          deleted[static_cast<std::size_t>(task) * n + j] = 1;
        }
      }
    }
    if (start < sp_tail[k]) sp_tail[k] = start;
  };

  while (!free_tasks.empty()) {
    std::uint32_t i;
    if (worklist == Worklist::kFifo) {
      i = free_tasks.front();
      free_tasks.pop_front();
    } else {
      i = free_tasks.back();
      free_tasks.pop_back();
    }

    const auto& lst = profile.task_prefs[i];
    std::size_t& cur = cursor[i];
    while (cur < lst.size() &&
           deleted[static_cast<std::size_t>(i) * n + lst[cur]]) {
      ++cur;
    }
    if (cur == lst.size()) continue;  // list exhausted; i stays unmatched

    const std::uint32_t j = lst[cur];
    ++cur;  // proposed, never offered again
    const std::uint32_t k = problem.fn_sp[j];

    task_to_fn[i] = j;
    assigned_fn[j].insert({sp_rank_of(k, i), i});
    sp_members[k].insert({sp_rank_of(k, i), i});
    sp_load[k]++;

    if (assigned_fn[j].size() > problem.fn_quota[j]) {
      unassign(assigned_fn[j].rbegin()->second);
    } else if (sp_load[k] > problem.sp_capacity[k]) {
      unassign(sp_members[k].rbegin()->second);
    }
    if (assigned_fn[j].size() == problem.fn_quota[j]) prune_fn(j);
    if (sp_load[k] == problem.sp_capacity[k]) prune_sp(k);
  }

  Matching matching;
  matching.task_to_fn = std::move(task_to_fn);
  matching.fn_to_tasks.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    for (const RankedTask& rt : assigned_fn[j]) {
      matching.fn_to_tasks[j].push_back(rt.second);
    }
    std::sort(matching.fn_to_tasks[j].begin(), matching.fn_to_tasks[j].end());
  }
  matching.sp_load = std::move(sp_load);
  return matching;
}

ConditionReport check_conditions(const MatchingProblem& problem,
                                 const ranking::PreferenceProfile& profile,
                                 const Matching& matching) {
  const std::size_t n = problem.fn_quota.size();
  ConditionReport report;
  report.task_single_fn = true;
  report.fn_within_quota = true;
  report.sp_within_capacity = true;
  report.views_consistent = true;
  report.pairs_feasible = true;

  auto note = [&](const std::string& msg) {
    if (report.detail.empty()) report.detail = msg;
  };

  if (matching.task_to_fn.size() != problem.num_tasks ||
      matching.fn_to_tasks.size() != n ||
      matching.sp_load.size() != problem.sp_capacity.size()) {
    report.views_consistent = false;
    note("matching shape does not match problem");
    return report;
  }

  for (std::uint32_t i = 0; i < matching.task_to_fn.size(); ++i) {
    const std::uint32_t j = matching.task_to_fn[i];
    if (j == Matching::kUnmatched) continue;
    if (j >= n) {
      report.task_single_fn = false;
      note("task " + std::to_string(i) + " assigned to unknown fn");
      continue;
    }
    const auto& lst = profile.task_prefs[i];
    if (std::find(lst.begin(), lst.end(), j) == lst.end()) {
      report.pairs_feasible = false;
      note("task " + std::to_string(i) + " assigned outside its feasible set");
    }
  }

  std::vector<std::uint32_t> sp_seen(problem.sp_capacity.size(), 0);
  std::vector<char> claimed(matching.task_to_fn.size(), 0);
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto& tasks = matching.fn_to_tasks[j];
    if (tasks.size() > problem.fn_quota[j]) {
      report.fn_within_quota = false;
      note("fn " + std::to_string(j) + " exceeds its quota");
    }
    sp_seen[problem.fn_sp[j]] += static_cast<std::uint32_t>(tasks.size());
    for (std::uint32_t i : tasks) {
      if (i >= matching.task_to_fn.size() || matching.task_to_fn[i] != j) {
        report.views_consistent = false;
        note("fn " + std::to_string(j) + " lists a task not matched to it");
        continue;
      }
      if (claimed[i]) {
        report.task_single_fn = false;
        note("task " + std::to_string(i) + " appears in two assignment lists");
      }
      claimed[i] = 1;
    }
  }
  for (std::uint32_t i = 0; i < matching.task_to_fn.size(); ++i) {
    if (matching.task_to_fn[i] != Matching::kUnmatched &&
        matching.task_to_fn[i] < n && !claimed[i]) {
      report.views_consistent = false;
      note("task " + std::to_string(i) + " missing from its fn's list");
    }
  }
  for (std::uint32_t k = 0; k < problem.sp_capacity.size(); ++k) {
    if (sp_seen[k] > problem.sp_capacity[k]) {
      report.sp_within_capacity = false;
      note("sp " + std::to_string(k) + " exceeds its capacity");
    }
    if (sp_seen[k] != matching.sp_load[k]) {
      report.views_consistent = false;
      note("sp " + std::to_string(k) + " load disagrees with assignments");
    }
  }
  return report;
}

namespace {

// An unranked agent compares as strictly worst; widening ranks to 64-bit
// keys keeps the max-tracking free of sentinel special cases.
std::uint64_t rank_key(std::uint32_t rank) {
  return rank == kNoRank ? ~std::uint64_t{0} : std::uint64_t{rank};
}

// Worst-assignee lookups shared by the stability scan.
struct StabilityContext {
  RankTables ranks;
  std::vector<std::uint64_t> fn_worst_key;  // valid only if the fn has assignees
  std::vector<std::uint64_t> sp_worst_key;  // valid only if sp_has_assignee
  std::vector<bool> sp_has_assignee;
};

StabilityContext build_context(const MatchingProblem& problem,
                               const ranking::PreferenceProfile& profile,
                               const Matching& matching) {
  StabilityContext ctx;
  ctx.ranks = build_ranks(problem, profile);
  const std::size_t n = problem.fn_quota.size();
  const std::size_t q = problem.sp_capacity.size();
  ctx.fn_worst_key.assign(n, 0);
  ctx.sp_worst_key.assign(q, 0);
  ctx.sp_has_assignee.assign(q, false);
  for (std::uint32_t j = 0; j < n; ++j) {
    const std::uint32_t k = problem.fn_sp[j];
    for (std::uint32_t i : matching.fn_to_tasks[j]) {
      ctx.fn_worst_key[j] =
          std::max(ctx.fn_worst_key[j], rank_key(ctx.ranks.fn_rank[j][i]));
      const std::uint64_t sp_key = rank_key(ctx.ranks.sp_rank[k][i]);
      if (!ctx.sp_has_assignee[k] || sp_key > ctx.sp_worst_key[k]) {
        ctx.sp_worst_key[k] = sp_key;
      }
      ctx.sp_has_assignee[k] = true;
    }
  }
  return ctx;
}

bool blocked(const MatchingProblem& problem, const Matching& matching,
             const StabilityContext& ctx, std::uint32_t i, std::uint32_t j) {
  const std::size_t n = problem.fn_quota.size();
  const std::uint32_t want = ctx.ranks.task_rank[std::size_t{i} * n + j];
  if (want == kNoRank) return false;  // fn not acceptable to the task
  const std::uint32_t cur = matching.task_to_fn[i];
  if (cur == j) return false;
  if (cur != Matching::kUnmatched) {
    const std::uint32_t have = ctx.ranks.task_rank[std::size_t{i} * n + cur];
    if (have <= want) return false;  // current match weakly preferred
  }
  const std::uint32_t k = problem.fn_sp[j];
  if (matching.fn_to_tasks[j].size() < problem.fn_quota[j]) {
    if (matching.sp_load[k] < problem.sp_capacity[k]) return true;  // (a)
    // (c) SP full: must beat the SP's worst assignee overall.
    if (!ctx.sp_has_assignee[k]) return false;
    return rank_key(ctx.ranks.sp_rank[k][i]) < ctx.sp_worst_key[k];
  }
  // (b) fn full: must beat the fn's own worst assignee.
  if (matching.fn_to_tasks[j].empty()) return false;
  return rank_key(ctx.ranks.fn_rank[j][i]) < ctx.fn_worst_key[j];
}

}  // namespace

bool is_blocking_pair(const MatchingProblem& problem,
                      const ranking::PreferenceProfile& profile,
                      const Matching& matching, std::uint32_t task_id,
                      std::uint32_t fn_id) {
  validate_shapes(problem, profile);
  if (task_id >= problem.num_tasks || fn_id >= problem.fn_quota.size()) {
    throw std::invalid_argument("is_blocking_pair: id out of range");
  }
  const StabilityContext ctx = build_context(problem, profile, matching);
  return blocked(problem, matching, ctx, task_id, fn_id);
}

StabilityReport verify_stability(const MatchingProblem& problem,
                                 const ranking::PreferenceProfile& profile,
                                 const Matching& matching) {
  validate_shapes(problem, profile);
  const auto n = static_cast<std::uint32_t>(problem.fn_quota.size());
  const StabilityContext ctx = build_context(problem, profile, matching);
  StabilityReport report;
  for (std::uint32_t i = 0; i < problem.num_tasks; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (blocked(problem, matching, ctx, i, j)) {
        report.blocking_pairs.push_back({i, j});
      }
    }
  }
  report.stable = report.blocking_pairs.empty();
  return report;
}

std::vector<Matching> enumerate_stable_matchings(
    const MatchingProblem& problem,
    const ranking::PreferenceProfile& profile) {
  validate_shapes(problem, profile);
  std::uint64_t total_quota = 0;
  for (std::uint32_t quota : problem.fn_quota) total_quota += quota;
  if (problem.num_tasks > 8 || total_quota > 8) {
    throw std::length_error("enumerate_stable_matchings: instance too large");
  }

  const std::size_t m = problem.num_tasks;
  std::vector<std::uint32_t> assignment(m, Matching::kUnmatched);
  std::vector<std::uint32_t> fn_free = problem.fn_quota;
  std::vector<std::uint32_t> sp_free = problem.sp_capacity;
  std::vector<Matching> stable;

  auto dfs = [&](auto&& self, std::uint32_t i) -> void {
    if (i == m) {
      Matching candidate = matching_from_assignment(problem, assignment);
      if (verify_stability(problem, profile, candidate).stable) {
        stable.push_back(std::move(candidate));
      }
      return;
    }
    self(self, i + 1);  // leave task i unmatched
    for (std::uint32_t j : profile.task_prefs[i]) {
      const std::uint32_t k = problem.fn_sp[j];
      if (fn_free[j] == 0 || sp_free[k] == 0) continue;
      fn_free[j]--;
      sp_free[k]--;
      assignment[i] = j;
      self(self, i + 1);
      assignment[i] = Matching::kUnmatched;
      fn_free[j]++;
      sp_free[k]++;
    }
  };
  dfs(dfs, 0);
  return stable;
}

}  // namespace spato::spa
