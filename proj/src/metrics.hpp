// Outcome metrics over a matching: energy, latency, outages, and revenue.
#ifndef SPATO_METRICS_HPP_
#define SPATO_METRICS_HPP_

#include <cstdint>
#include <vector>

#include "spa.hpp"
#include "types.hpp"

namespace spato::metrics {

struct OutageReport {
  std::uint32_t outages = 0;    // unmatched + late
  std::uint32_t unmatched = 0;
  std::uint32_t late = 0;       // matched but latency_s > deadline_s
};

struct RevenueReport {
  std::vector<double> per_sp;   // USD billed by each provider
  double total_usd = 0.0;
};

struct Summary {
  double total_energy_j = 0.0;
  double mean_offload_time_s = 0.0;
  std::uint32_t matched = 0;
  std::uint32_t on_time = 0;    // matched and latency_s <= deadline_s
  OutageReport outage;
  double outage_rate = 0.0;     // outages / num_tasks
  RevenueReport revenue;
};

// Sum of total (transmission + execution) energy over matched pairs.
double total_offload_energy(const Instance& instance, const spa::Matching& matching);

// Mean total latency over matched tasks; 0 when nothing is matched.
double mean_offload_time(const Instance& instance, const spa::Matching& matching);

OutageReport count_outages(const Instance& instance, const spa::Matching& matching);

// Each provider bills tariff * offloaded megabits / deadline for every task
// assigned to one of its nodes that completes within its deadline; a late or
// unmatched task generates no revenue.
RevenueReport revenue(const Instance& instance, const spa::Matching& matching);

Summary summarize(const Instance& instance, const spa::Matching& matching);

}  // namespace spato::metrics

#endif  // SPATO_METRICS_HPP_
