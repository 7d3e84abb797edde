#include "metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "ranking.hpp"

namespace spato::metrics {

namespace {

const PairCost& cost_of(const Instance& instance, std::uint32_t task, std::uint32_t fn) {
  const auto& row = instance.feasible_sets[task];
  const auto it = std::lower_bound(row.begin(), row.end(), fn);
  if (it == row.end() || *it != fn) {
    throw std::invalid_argument("metrics: matched pair outside feasible set");
  }
  return instance.pair_costs[task][static_cast<std::size_t>(it - row.begin())];
}

void check_shapes(const Instance& instance, const spa::Matching& matching) {
  if (matching.task_to_fn.size() != instance.tasks.size() ||
      matching.fn_to_tasks.size() != instance.fns.size() ||
      matching.sp_load.size() != instance.sps.size()) {
    throw std::invalid_argument("metrics: matching does not fit instance");
  }
}

}  // namespace

double total_offload_energy(const Instance& instance, const spa::Matching& matching) {
  check_shapes(instance, matching);
  double total = 0.0;
  for (std::uint32_t i = 0; i < matching.task_to_fn.size(); ++i) {
    if (!matching.is_matched(i)) continue;
    total += cost_of(instance, i, matching.task_to_fn[i]).energy_j;
  }
  return total;
}

double mean_offload_time(const Instance& instance, const spa::Matching& matching) {
  check_shapes(instance, matching);
  double total = 0.0;
  std::uint32_t matched = 0;
  for (std::uint32_t i = 0; i < matching.task_to_fn.size(); ++i) {
    if (!matching.is_matched(i)) continue;
    total += cost_of(instance, i, matching.task_to_fn[i]).latency_s;
    ++matched;
  }
  return matched == 0 ? 0.0 : total / matched;
}

OutageReport count_outages(const Instance& instance, const spa::Matching& matching) {
  check_shapes(instance, matching);
  OutageReport report;
  for (std::uint32_t i = 0; i < matching.task_to_fn.size(); ++i) {
    if (!matching.is_matched(i)) {
      ++report.unmatched;
    } else if (cost_of(instance, i, matching.task_to_fn[i]).latency_s >
               instance.tasks[i].deadline_s) {
      ++report.late;
    }
  }
  report.outages = report.unmatched + report.late;
  return report;
}

RevenueReport revenue(const Instance& instance, const spa::Matching& matching) {
  check_shapes(instance, matching);
  RevenueReport report;
  report.per_sp.assign(instance.sps.size(), 0.0);
  for (std::uint32_t i = 0; i < matching.task_to_fn.size(); ++i) {
    if (!matching.is_matched(i)) continue;
    const std::uint32_t j = matching.task_to_fn[i];
    const Task& task = instance.tasks[i];
    if (cost_of(instance, i, j).latency_s > task.deadline_s) continue;
    const std::uint32_t k = instance.fns[j].sp_id;
    report.per_sp[k] += ranking::provider_efficiency(
        instance.sps[k].tariff_usd_per_mbps, task.size_bits, task.deadline_s);
  }
  for (double v : report.per_sp) report.total_usd += v;
  return report;
}

Summary summarize(const Instance& instance, const spa::Matching& matching) {
  Summary summary;
  summary.total_energy_j = total_offload_energy(instance, matching);
  summary.mean_offload_time_s = mean_offload_time(instance, matching);
  summary.matched = matching.matched_count();
  summary.outage = count_outages(instance, matching);
  summary.on_time = summary.matched - summary.outage.late;
  summary.outage_rate =
      instance.tasks.empty()
          ? 0.0
          : static_cast<double>(summary.outage.outages) / instance.tasks.size();
  summary.revenue = revenue(instance, matching);
  return summary;
}

}  // namespace spato::metrics
