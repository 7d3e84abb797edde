#include "ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "model.hpp"

namespace spato::ranking {

namespace {

constexpr double kReciprocalTol = 1e-9;

// Sorted-row membership test; feasible set rows are kept ascending.
bool in_feasible_set(const std::vector<std::uint32_t>& row,
                     std::uint32_t fn_id) {
  return std::binary_search(row.begin(), row.end(), fn_id);
}

}  // namespace

std::vector<double> ahp_weights(
    const std::vector<std::vector<double>>& pairwise) {
  const std::size_t n = pairwise.size();
  if (n == 0) throw std::invalid_argument("ahp: empty matrix");
  for (const auto& row : pairwise) {
    if (row.size() != n) throw std::invalid_argument("ahp: matrix not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = pairwise[i][j];
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("ahp: entries must be positive finite");
      }
      if (i == j && std::fabs(v - 1.0) > kReciprocalTol) {
        throw std::invalid_argument("ahp: diagonal must be 1");
      }
      if (std::fabs(v * pairwise[j][i] - 1.0) > kReciprocalTol) {
        throw std::invalid_argument("ahp: matrix not reciprocal");
      }
    }
  }

  std::vector<double> column_sum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) column_sum[j] += pairwise[i][j];
  }
  std::vector<double> weights(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += pairwise[i][j] / column_sum[j];
    weights[i] = acc / static_cast<double>(n);
  }
  return weights;
}

std::vector<std::vector<double>> ahp_matrix_from_ratio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("ahp: ratio must be positive finite");
  }
  return {{1.0, ratio}, {1.0 / ratio, 1.0}};
}

std::vector<std::uint32_t> feasible_set(const IoTDevice& device,
                                        const std::vector<FogNode>& fns,
                                        const std::vector<LinkState>& links,
                                        std::size_t fn_count) {
  std::vector<std::uint32_t> result;
  for (const FogNode& fn : fns) {
    const LinkState& link =
        links[static_cast<std::size_t>(device.id) * fn_count + fn.id];
    if (link.distance_m <= device.coverage_m && link.uplink_bps > 0.0) {
      result.push_back(fn.id);
    }
  }
  return result;
}

DeviceRanking device_preferences(const std::vector<PairCost>& costs,
                                 double latency_weight, double energy_weight) {
  DeviceRanking ranking;
  double latency_sum = 0.0, energy_sum = 0.0;
  for (const PairCost& c : costs) {
    latency_sum += c.latency_s;
    energy_sum += c.energy_j;
  }
  ranking.utilities.reserve(costs.size());
  for (const PairCost& c : costs) {
    const double t_norm = latency_sum > 0.0 ? c.latency_s / latency_sum : 0.0;
    const double e_norm = energy_sum > 0.0 ? c.energy_j / energy_sum : 0.0;
    ranking.utilities.push_back(
        model::utility_score(t_norm, e_norm, latency_weight, energy_weight));
  }

  std::vector<std::size_t> order(costs.size());
  for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranking.utilities[a] != ranking.utilities[b]) {
      return ranking.utilities[a] < ranking.utilities[b];
    }
    return costs[a].fn_id < costs[b].fn_id;
  });
  ranking.ranked_fn_ids.reserve(order.size());
  for (std::size_t r : order) ranking.ranked_fn_ids.push_back(costs[r].fn_id);
  return ranking;
}

double provider_efficiency(double tariff_usd_per_mbps, double size_bits,
                           double deadline_s) {
  if (!(deadline_s > 0.0)) {
    throw std::domain_error("provider_efficiency: deadline must be positive");
  }
  return tariff_usd_per_mbps * (size_bits / 1e6) / deadline_s;
}

std::vector<std::uint32_t> provider_preferences(
    const ServiceProvider& sp, const std::vector<Task>& tasks,
    const std::vector<std::vector<std::uint32_t>>& feasible_sets) {
  std::vector<std::uint32_t> ranked;
  std::vector<double> pe(tasks.size(), 0.0);
  for (const Task& task : tasks) {
    bool reachable = false;
    for (std::uint32_t fn_id : sp.fn_ids) {
      if (in_feasible_set(feasible_sets[task.id], fn_id)) {
        reachable = true;
        break;
      }
    }
    if (!reachable) continue;
    pe[task.id] = provider_efficiency(sp.tariff_usd_per_mbps, task.size_bits,
                                      task.deadline_s);
    ranked.push_back(task.id);
  }
  std::sort(ranked.begin(), ranked.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (pe[a] != pe[b]) return pe[a] > pe[b];
              return a < b;
            });
  return ranked;
}

PreferenceProfile build_spato_profile(const Instance& instance) {
  PreferenceProfile profile;
  const std::size_t m = instance.tasks.size();

  profile.task_prefs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Stored utilities already carry the AHP weighting from assembly; rank
    // by them rather than rescoring so profile and instance agree exactly.
    const auto& row = instance.feasible_sets[i];
    std::vector<std::size_t> order(row.size());
    for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ua = instance.pair_costs[i][a].utility;
      const double ub = instance.pair_costs[i][b].utility;
      if (ua != ub) return ua < ub;
      return row[a] < row[b];
    });
    profile.task_prefs[i].reserve(row.size());
    for (std::size_t r : order) profile.task_prefs[i].push_back(row[r]);
  }

  profile.sp_prefs.resize(instance.sps.size());
  for (const ServiceProvider& sp : instance.sps) {
    profile.sp_prefs[sp.id] =
        provider_preferences(sp, instance.tasks, instance.feasible_sets);
  }

  // P_j^k is P_k restricted to tasks that can reach f_j^k.
  profile.fn_prefs.resize(instance.fns.size());
  for (const ServiceProvider& sp : instance.sps) {
    for (std::uint32_t task_id : profile.sp_prefs[sp.id]) {
      for (std::uint32_t fn_id : sp.fn_ids) {
        if (in_feasible_set(instance.feasible_sets[task_id], fn_id)) {
          profile.fn_prefs[fn_id].push_back(task_id);
        }
      }
    }
  }
  return profile;
}

PreferenceProfile build_smeto_profile(const Instance& instance) {
  PreferenceProfile profile;
  const std::size_t m = instance.tasks.size();
  const std::size_t n = instance.fns.size();

  profile.task_prefs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = instance.feasible_sets[i];
    std::vector<double> te(row.size());
    for (std::size_t r = 0; r < row.size(); ++r) {
      const LinkState& link = instance.link(static_cast<std::uint32_t>(i),
                                            row[r]);
      te[r] = model::transmission_energy(
          instance.devices[i].tx_power_w,
          model::transmission_time(instance.tasks[i].size_bits,
                                   link.uplink_bps));
    }
    std::vector<std::size_t> order(row.size());
    for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (te[a] != te[b]) return te[a] < te[b];
      return row[a] < row[b];
    });
    profile.task_prefs[i].reserve(row.size());
    for (std::size_t r : order) profile.task_prefs[i].push_back(row[r]);
  }

  profile.fn_prefs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& ranked = profile.fn_prefs[j];
    for (std::size_t i = 0; i < m; ++i) {
      if (in_feasible_set(instance.feasible_sets[i],
                          static_cast<std::uint32_t>(j))) {
        ranked.push_back(static_cast<std::uint32_t>(i));
      }
    }
    std::sort(ranked.begin(), ranked.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                const double ga = instance.link(a, static_cast<std::uint32_t>(j)).gain;
                const double gb = instance.link(b, static_cast<std::uint32_t>(j)).gain;
                if (ga != gb) return ga > gb;
                return a < b;
              });
  }

  // SP-side order (used only when SP capacity binds below the quota sum):
  // proximity reading — a task ranks by its best gain to any owned FN.
  profile.sp_prefs.resize(instance.sps.size());
  for (const ServiceProvider& sp : instance.sps) {
    std::vector<double> best_gain(m, -1.0);
    auto& ranked = profile.sp_prefs[sp.id];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::uint32_t fn_id : sp.fn_ids) {
        if (!in_feasible_set(instance.feasible_sets[i], fn_id)) continue;
        best_gain[i] = std::max(
            best_gain[i], instance.link(static_cast<std::uint32_t>(i), fn_id).gain);
      }
      if (best_gain[i] >= 0.0) ranked.push_back(static_cast<std::uint32_t>(i));
    }
    std::sort(ranked.begin(), ranked.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                if (best_gain[a] != best_gain[b]) {
                  return best_gain[a] > best_gain[b];
                }
                return a < b;
              });
  }
  return profile;
}

}  // namespace spato::ranking
