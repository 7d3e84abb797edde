// Student-Project-Allocation style matching: task-proposing algorithm with
// FN quotas and SP capacities, blocking-pair verification, and an exhaustive
// enumeration oracle for tiny instances.
#ifndef SPATO_SPA_HPP_
#define SPATO_SPA_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ranking.hpp"
#include "types.hpp"

namespace spato::spa {

// Capacity skeleton of an instance. SP capacity may be below the sum of its
// FN quotas (the general SPA setting); generated scenarios always have
// equality.
struct MatchingProblem {
  std::uint32_t num_tasks = 0;
  std::vector<std::uint32_t> fn_sp;        // fn id -> owning sp id
  std::vector<std::uint32_t> fn_quota;     // C_j^k
  std::vector<std::uint32_t> sp_capacity;  // C_k
};

MatchingProblem problem_from_instance(const Instance& instance);

struct Matching {
  static constexpr std::uint32_t kUnmatched = 0xFFFFFFFFu;
  std::vector<std::uint32_t> task_to_fn;             // kUnmatched if free
  std::vector<std::vector<std::uint32_t>> fn_to_tasks;  // ascending task id
  std::vector<std::uint32_t> sp_load;

  bool is_matched(std::uint32_t task_id) const {
    return task_to_fn[task_id] != kUnmatched;
  }
  std::uint32_t matched_count() const;
};

// Rebuilds the FN and SP views from a task->fn map (kUnmatched allowed).
// Throws std::invalid_argument on out-of-range fn ids.
Matching matching_from_assignment(const MatchingProblem& problem,
                                  const std::vector<std::uint32_t>& task_to_fn);

// Order in which freed tasks are reconsidered. The stable outcome is
// worklist-invariant; both disciplines exist to demonstrate exactly that.
enum class Worklist { kFifo, kLifo };

// Task-proposing SPA. Free tasks propose down their lists; an FN provisionally
// accepts and rejects its worst when over quota, else the SP rejects its worst
// assignee when over capacity; once an FN (SP) is full every strictly worse
// entry of its preference list is deleted from both sides. Terminates at a
// matching satisfying the four validity conditions and stable w.r.t. the
// profile. fn_prefs must order tasks consistently with the owning SP's list.
Matching run_spato(const MatchingProblem& problem,
                   const ranking::PreferenceProfile& profile,
                   Worklist worklist = Worklist::kFifo);

// Validity conditions — unique assignment, quota, capacity, view agreement —
// plus pair feasibility; detail names the first violation.
struct ConditionReport {
  bool task_single_fn = false;
  bool fn_within_quota = false;
  bool sp_within_capacity = false;
  bool views_consistent = false;
  bool pairs_feasible = false;
  std::string detail;

  bool all_ok() const {
    return task_single_fn && fn_within_quota && sp_within_capacity &&
           views_consistent && pairs_feasible;
  }
};

ConditionReport check_conditions(const MatchingProblem& problem,
                                 const ranking::PreferenceProfile& profile,
                                 const Matching& matching);

struct BlockingPair {
  std::uint32_t task_id = 0;
  std::uint32_t fn_id = 0;
};

// (task, fn) blocks iff fn is acceptable and not the current assignment, the
// task is free or strictly prefers fn, and one of: (a) fn under-subscribed
// with SP not full; (b) fn full and the SP strictly prefers the task to fn's
// worst assignee; (c) SP full and the SP strictly prefers the task to its
// worst assignee overall.
bool is_blocking_pair(const MatchingProblem& problem,
                      const ranking::PreferenceProfile& profile,
                      const Matching& matching, std::uint32_t task_id,
                      std::uint32_t fn_id);

struct StabilityReport {
  bool stable = false;
  std::vector<BlockingPair> blocking_pairs;  // ascending (task, fn)
};

// Scans every acceptable (task, fn) pair.
StabilityReport verify_stability(const MatchingProblem& problem,
                                 const ranking::PreferenceProfile& profile,
                                 const Matching& matching);

// Exhaustive oracle: every capacity-respecting assignment within the
// acceptability structure, filtered by verify_stability. Guarded to
// num_tasks <= 8 and total quota <= 8 (throws std::length_error beyond).
std::vector<Matching> enumerate_stable_matchings(
    const MatchingProblem& problem, const ranking::PreferenceProfile& profile);

}  // namespace spato::spa

#endif  // SPATO_SPA_HPP_
