// Preference construction: AHP criteria weights, device-side FN rankings,
// provider-side task rankings, and the bundled profiles the matchers consume.
#ifndef SPATO_RANKING_HPP_
#define SPATO_RANKING_HPP_

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace spato::ranking {

// Criteria weights from a pairwise comparison matrix: normalize each column
// by its sum, then average rows. Throws std::invalid_argument unless the
// matrix is square, positive, reciprocal and unit-diagonal.
std::vector<double> ahp_weights(const std::vector<std::vector<double>>& pairwise);

// The two-criteria matrix [[1, a], [1/a, 1]] for the latency:energy ratio a.
std::vector<std::vector<double>> ahp_matrix_from_ratio(double ratio);

// A_i: fn ids whose distance to the device is within its coverage radius,
// ascending id. Pairs with a non-positive uplink rate are excluded.
std::vector<std::uint32_t> feasible_set(const IoTDevice& device,
                                        const std::vector<FogNode>& fns,
                                        const std::vector<LinkState>& links,
                                        std::size_t fn_count);

struct DeviceRanking {
  std::vector<double> utilities;              // aligned with the input costs
  std::vector<std::uint32_t> ranked_fn_ids;   // best (lowest score) first
};

// Scores one device's feasible FNs: divide each cost column by its sum over
// the feasible set, then weight. Ties break toward the lower fn id.
DeviceRanking device_preferences(const std::vector<PairCost>& costs,
                                 double latency_weight, double energy_weight);

// PE: tariff ($/Mbps) * size (Mbit) / deadline (s) — the price of serving
// this task at the rate its deadline demands.
double provider_efficiency(double tariff_usd_per_mbps, double size_bits,
                           double deadline_s);

// P_k: ids of tasks with at least one of sp's FNs in their feasible set,
// by descending PE, ties toward the lower task id.
std::vector<std::uint32_t> provider_preferences(
    const ServiceProvider& sp, const std::vector<Task>& tasks,
    const std::vector<std::vector<std::uint32_t>>& feasible_sets);

// Everything the matching engines need. fn_prefs[j] must order tasks
// consistently with sp_prefs of the owning SP for the SPATO engine; the
// SMETO profile instead carries per-FN gain orders.
struct PreferenceProfile {
  std::vector<std::vector<std::uint32_t>> task_prefs;  // [task] fn ids
  std::vector<std::vector<std::uint32_t>> sp_prefs;    // [sp] task ids
  std::vector<std::vector<std::uint32_t>> fn_prefs;    // [fn] task ids
};

// Utility-ordered device lists, PE-ordered SP lists, per-FN restrictions.
PreferenceProfile build_spato_profile(const Instance& instance);

// Baseline profile: devices rank by ascending transmission energy, FNs by
// descending channel gain, SPs by descending best gain to any owned FN.
PreferenceProfile build_smeto_profile(const Instance& instance);

}  // namespace spato::ranking

#endif  // SPATO_RANKING_HPP_
