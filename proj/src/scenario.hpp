// Scenario configuration, seeded instance generation, and (de)serialization.
#ifndef SPATO_SCENARIO_HPP_
#define SPATO_SCENARIO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "types.hpp"

namespace spato::scenario {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// How a fog node's per-VRU rate relates to the drawn host rate: the host
// rate divided evenly across VRUs (default), or taken per VRU as drawn.
enum class VruRateMode { kHostDivided, kPerVru };

struct ScenarioConfig {
  std::uint32_t num_sps = 4;
  std::uint32_t fns_per_sp = 5;
  double bandwidth_hz = 2e7;                    // B, licensed band per SP
  Range tariff_range{50.0, 100.0};              // $/Mbps
  Range field_range{0.0, 100.0};                // deployment square, m
  Range coverage_range{200.0, 500.0};           // device radio range, m
  Range vru_range{50.0, 300.0};                 // VRUs per FN (integer draw)
  Range host_rate_range{6e9, 1e10};             // host CPU rate, cycles/s
  Range compute_power_range{0.35, 0.55};        // FN compute power, W
  std::uint32_t num_tasks = 1000;
  Range size_range{3e5, 6e5};                   // task input, bits
  Range cycles_range{2.1e8, 4.8e8};             // task CPU demand, cycles
  Range deadline_range{5.0, 30.0};              // s
  double tx_power_w = 0.5;
  double noise_power_w = 1e-10;
  double ahp_ratio = 1.0;                       // latency:energy importance
  VruRateMode vru_rate_mode = VruRateMode::kHostDivided;
  std::uint64_t rng_seed = 1;
};

// Parse/validation failures carry "line N: field: problem" style messages.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key-value text (one "key = value" per line, '#' comments). Unknown
// or duplicate keys and malformed values are errors; missing keys keep
// their defaults. Validation runs on the result.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& config);

// Key-level access used by the C API; keys match the config file format.
void config_set(ScenarioConfig& config, const std::string& key,
                const std::string& value);
std::string config_get(const ScenarioConfig& config, const std::string& key);

// Draws all entities with one seeded generator in a fixed order
// (SPs -> FNs -> devices -> tasks), then derives capacities, subchannels,
// link states, feasible sets and pair costs. Identical (config, seed)
// yields a byte-identical instance.
Instance generate(const ScenarioConfig& config, std::uint64_t seed);

// Derivation step shared by generate() and hand-built test instances:
// fills SP capacity/subchannel, links, feasible sets and utility-scored
// pair costs. Entity vectors must be indexed by id. Coincident device/FN
// positions are clamped to 1 m separation.
Instance materialize(std::vector<ServiceProvider> sps,
                     std::vector<FogNode> fns,
                     std::vector<IoTDevice> devices, std::vector<Task> tasks,
                     double noise_power_w, double ahp_ratio);

// JSON round-trip; deserialize validates structure and re-derives nothing.
std::string serialize_instance(const Instance& instance);
Instance deserialize_instance(const std::string& text);

void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace spato::scenario

#endif  // SPATO_SCENARIO_HPP_
