// Domain types for the multi-SP fog offloading model.
#ifndef SPATO_TYPES_HPP_
#define SPATO_TYPES_HPP_

#include <cstdint>
#include <vector>

namespace spato {

// One computation task; exactly one per IoT device, so task id == device id.
struct Task {
  std::uint32_t id = 0;
  double size_bits = 0.0;   // I_i, input size to upload
  double cycles = 0.0;      // G_i, CPU cycles to execute
  double deadline_s = 0.0;  // Y_i, completion deadline
};

struct IoTDevice {
  std::uint32_t id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  double coverage_m = 0.0;  // d_i, transmission range
  double tx_power_w = 0.0;  // p_i
};

struct FogNode {
  std::uint32_t id = 0;
  std::uint32_t sp_id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  std::uint32_t vru_count = 0;   // C_j^k, virtual resource units == quota
  double host_rate_hz = 0.0;     // drawn host CPU rate, cycles/s
  double vru_rate_hz = 0.0;      // eta_j^k, per-VRU cycle rate
  double compute_power_w = 0.0;  // p_j^k
};

struct ServiceProvider {
  std::uint32_t id = 0;
  double tariff_usd_per_mbps = 0.0;    // C_k, unit price of service
  double bandwidth_hz = 0.0;           // B, licensed uplink band
  std::uint32_t capacity = 0;          // C_k, total VRUs across owned FNs
  double subchannel_hz = 0.0;          // W_k = B / capacity
  std::vector<std::uint32_t> fn_ids;   // owned fog nodes
};

// Physical uplink state for one (device, fn) pair; kept for every pair, not
// just feasible ones, so audits can recompute feasibility from scratch.
struct LinkState {
  std::uint32_t device_id = 0;
  std::uint32_t fn_id = 0;
  double distance_m = 0.0;
  double path_loss_db = 0.0;
  double gain = 0.0;        // h = 10^(-PL/10)
  double uplink_bps = 0.0;  // Shannon rate over the SP subchannel
};

// Offloading cost of one feasible (task, fn) pair.
struct PairCost {
  std::uint32_t task_id = 0;
  std::uint32_t fn_id = 0;
  double latency_s = 0.0;      // T = transmission + execution time
  double energy_j = 0.0;       // E = transmission + execution energy
  double utility = 0.0;        // weighted normalized score, lower is better
  double noise_power_w = 0.0;  // n_0 at instance scope, recorded for audit
};

struct Instance {
  std::vector<ServiceProvider> sps;
  std::vector<FogNode> fns;
  std::vector<IoTDevice> devices;
  std::vector<Task> tasks;
  double noise_power_w = 0.0;

  // Row-major [device][fn] over all pairs.
  std::vector<LinkState> links;

  // A_i: fn ids reachable by device i (ascending id), one row per device.
  std::vector<std::vector<std::uint32_t>> feasible_sets;

  // Costs aligned with feasible_sets rows: pair_costs[i][r] belongs to
  // feasible_sets[i][r].
  std::vector<std::vector<PairCost>> pair_costs;

  const LinkState& link(std::uint32_t device_id, std::uint32_t fn_id) const {
    return links[static_cast<std::size_t>(device_id) * fns.size() + fn_id];
  }
};

}  // namespace spato

#endif  // SPATO_TYPES_HPP_
