// Comparison allocators: an energy-driven deferred-acceptance baseline and a
// capacity-respecting uniform-random assigner.
#ifndef SPATO_BASELINES_HPP_
#define SPATO_BASELINES_HPP_

#include <cstdint>

#include "ranking.hpp"
#include "spa.hpp"
#include "types.hpp"

namespace spato::baselines {

// Deferred acceptance over the given profile with per-FN autonomous lists:
// tasks propose down their lists; an FN over quota rejects its own
// worst-ranked assignee; an SP over capacity rejects its worst by the SP
// list. No fullness pruning — rejected tasks simply continue proposing.
spa::Matching run_deferred_acceptance(const spa::MatchingProblem& problem,
                                      const ranking::PreferenceProfile& profile);

// SMETO-style baseline: devices rank by ascending transmission energy, FNs by
// descending channel gain (profile from ranking::build_smeto_profile).
spa::Matching run_smeto(const Instance& instance);

// Tasks in id order each draw uniformly among feasible FNs with residual
// quota and residual SP capacity; a task with no such FN stays unmatched.
// Deterministic for a given seed.
spa::Matching run_random(const spa::MatchingProblem& problem,
                         const std::vector<std::vector<std::uint32_t>>& feasible_sets,
                         std::uint64_t rng_seed);
spa::Matching run_random(const Instance& instance, std::uint64_t rng_seed);

}  // namespace spato::baselines

#endif  // SPATO_BASELINES_HPP_
