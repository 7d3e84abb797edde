#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "model.hpp"
#include "ranking.hpp"
#include "rng.hpp"

namespace spato::scenario {

namespace {

using nlohmann::json;

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + text + "'");
  }
  if (used != text.size()) {
    throw ConfigError("trailing characters after number in '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text) {
  const double value = parse_double(text);
  if (value < 0.0 || value != std::floor(value)) {
    throw ConfigError("expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(value);
}

Range parse_range(const std::string& text) {
  std::istringstream stream(text);
  std::string lo, hi, extra;
  if (!(stream >> lo >> hi) || (stream >> extra)) {
    throw ConfigError("expected two numbers 'low high', got '" + text + "'");
  }
  return Range{parse_double(lo), parse_double(hi)};
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void check_range(const char* name, const Range& range, double min_lo) {
  if (!(range.lo <= range.hi)) {
    throw ConfigError(std::string(name) + ": lower bound exceeds upper bound");
  }
  if (!(range.lo >= min_lo)) {
    throw ConfigError(std::string(name) + ": lower bound below " +
                      format_double(min_lo));
  }
}

}  // namespace

void validate_config(const ScenarioConfig& config) {
  if (config.num_sps < 1) throw ConfigError("num_sps: must be at least 1");
  if (config.fns_per_sp < 1) {
    throw ConfigError("fns_per_sp: must be at least 1");
  }
  if (config.num_tasks < 1) throw ConfigError("num_tasks: must be at least 1");
  if (!(config.bandwidth_hz > 0.0)) {
    throw ConfigError("bandwidth_hz: must be positive");
  }
  if (!(config.tx_power_w > 0.0)) {
    throw ConfigError("tx_power_w: must be positive");
  }
  if (!(config.noise_power_w > 0.0)) {
    throw ConfigError("noise_power_w: must be positive");
  }
  if (!(config.ahp_ratio > 0.0)) {
    throw ConfigError("ahp_ratio: must be positive");
  }
  check_range("tariff_range", config.tariff_range, 1e-12);
  check_range("field_range", config.field_range, 0.0);
  check_range("coverage_range", config.coverage_range, 1e-12);
  check_range("vru_range", config.vru_range, 1.0);
  check_range("host_rate_range", config.host_rate_range, 1e-12);
  check_range("compute_power_range", config.compute_power_range, 1e-12);
  check_range("size_range", config.size_range, 1e-12);
  check_range("cycles_range", config.cycles_range, 1e-12);
  check_range("deadline_range", config.deadline_range, 1e-12);
  if (config.vru_range.lo != std::floor(config.vru_range.lo) ||
      config.vru_range.hi != std::floor(config.vru_range.hi)) {
    throw ConfigError("vru_range: bounds must be integers");
  }
}

namespace {

// Dispatch body of config_set; errors are re-thrown with the key prefixed.
void config_set_impl(ScenarioConfig& config, const std::string& key,
                     const std::string& value) {
  if (key == "num_sps") {
    config.num_sps = static_cast<std::uint32_t>(parse_u64(value));
  } else if (key == "fns_per_sp") {
    config.fns_per_sp = static_cast<std::uint32_t>(parse_u64(value));
  } else if (key == "bandwidth_hz") {
    config.bandwidth_hz = parse_double(value);
  } else if (key == "tariff_range") {
    config.tariff_range = parse_range(value);
  } else if (key == "field_range") {
    config.field_range = parse_range(value);
  } else if (key == "coverage_range") {
    config.coverage_range = parse_range(value);
  } else if (key == "vru_range") {
    config.vru_range = parse_range(value);
  } else if (key == "host_rate_range") {
    config.host_rate_range = parse_range(value);
  } else if (key == "compute_power_range") {
    config.compute_power_range = parse_range(value);
  } else if (key == "num_tasks") {
    config.num_tasks = static_cast<std::uint32_t>(parse_u64(value));
  } else if (key == "size_range") {
    config.size_range = parse_range(value);
  } else if (key == "cycles_range") {
    config.cycles_range = parse_range(value);
  } else if (key == "deadline_range") {
    config.deadline_range = parse_range(value);
  } else if (key == "tx_power_w") {
    config.tx_power_w = parse_double(value);
  } else if (key == "noise_power_w") {
    config.noise_power_w = parse_double(value);
  } else if (key == "ahp_ratio") {
    config.ahp_ratio = parse_double(value);
  } else if (key == "vru_rate_mode") {
    if (value == "host_divided") {
      config.vru_rate_mode = VruRateMode::kHostDivided;
    } else if (value == "per_vru") {
      config.vru_rate_mode = VruRateMode::kPerVru;
    } else {
      throw ConfigError(
          "vru_rate_mode: expected 'host_divided' or 'per_vru', got '" +
          value + "'");
    }
  } else if (key == "rng_seed") {
    config.rng_seed = parse_u64(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace

void config_set(ScenarioConfig& config, const std::string& key,
                const std::string& value) {
  try {
    config_set_impl(config, key, value);
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    if (what.find(key) != std::string::npos) throw;
    throw ConfigError(key + ": " + what);
  }
}

std::string config_get(const ScenarioConfig& config, const std::string& key) {
  auto range = [](const Range& r) {
    return format_double(r.lo) + " " + format_double(r.hi);
  };
  if (key == "num_sps") return std::to_string(config.num_sps);
  if (key == "fns_per_sp") return std::to_string(config.fns_per_sp);
  if (key == "bandwidth_hz") return format_double(config.bandwidth_hz);
  if (key == "tariff_range") return range(config.tariff_range);
  if (key == "field_range") return range(config.field_range);
  if (key == "coverage_range") return range(config.coverage_range);
  if (key == "vru_range") return range(config.vru_range);
  if (key == "host_rate_range") return range(config.host_rate_range);
  if (key == "compute_power_range") return range(config.compute_power_range);
  if (key == "num_tasks") return std::to_string(config.num_tasks);
  if (key == "size_range") return range(config.size_range);
  if (key == "cycles_range") return range(config.cycles_range);
  if (key == "deadline_range") return range(config.deadline_range);
  if (key == "tx_power_w") return format_double(config.tx_power_w);
  if (key == "noise_power_w") return format_double(config.noise_power_w);
  if (key == "ahp_ratio") return format_double(config.ahp_ratio);
  if (key == "vru_rate_mode") {
    return config.vru_rate_mode == VruRateMode::kHostDivided ? "host_divided"
                                                             : "per_vru";
  }
  if (key == "rng_seed") return std::to_string(config.rng_seed);
  throw ConfigError("unknown key '" + key + "'");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  std::set<std::string> seen;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
    try {
      config_set(config, key, value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  validate_config(config);
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

Instance materialize(std::vector<ServiceProvider> sps,
                     std::vector<FogNode> fns,
                     std::vector<IoTDevice> devices, std::vector<Task> tasks,
                     double noise_power_w, double ahp_ratio) {
  Instance instance;
  instance.sps = std::move(sps);
  instance.fns = std::move(fns);
  instance.devices = std::move(devices);
  instance.tasks = std::move(tasks);
  instance.noise_power_w = noise_power_w;

  for (std::size_t idx = 0; idx < instance.sps.size(); ++idx) {
    if (instance.sps[idx].id != idx) {
      throw std::invalid_argument("materialize: sp ids must be 0..q-1");
    }
    instance.sps[idx].fn_ids.clear();
    instance.sps[idx].capacity = 0;
  }
  for (std::size_t idx = 0; idx < instance.fns.size(); ++idx) {
    const FogNode& fn = instance.fns[idx];
    if (fn.id != idx || fn.sp_id >= instance.sps.size()) {
      throw std::invalid_argument("materialize: bad fn id or sp_id");
    }
    instance.sps[fn.sp_id].fn_ids.push_back(fn.id);
    instance.sps[fn.sp_id].capacity += fn.vru_count;
  }
  for (ServiceProvider& sp : instance.sps) {
    if (sp.capacity == 0) {
      throw std::invalid_argument("materialize: sp with zero capacity");
    }
    sp.subchannel_hz = sp.bandwidth_hz / static_cast<double>(sp.capacity);
  }
  if (instance.devices.size() != instance.tasks.size()) {
    throw std::invalid_argument("materialize: one task per device required");
  }

  const std::size_t m = instance.devices.size();
  const std::size_t n = instance.fns.size();
  instance.links.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    if (instance.devices[i].id != i || instance.tasks[i].id != i) {
      throw std::invalid_argument("materialize: device/task ids must be 0..m-1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const IoTDevice& device = instance.devices[i];
      const FogNode& fn = instance.fns[j];
      double distance =
          std::hypot(device.x_m - fn.x_m, device.y_m - fn.y_m);
      if (distance < 1e-9) distance = 1.0;  // coincident positions clamp
      LinkState link;
      link.device_id = device.id;
      link.fn_id = fn.id;
      link.distance_m = distance;
      link.path_loss_db = model::path_loss(distance);
      link.gain = model::channel_gain(link.path_loss_db);
      link.uplink_bps =
          model::uplink_rate(instance.sps[fn.sp_id].subchannel_hz,
                             device.tx_power_w, link.gain, noise_power_w);
      instance.links.push_back(link);
    }
  }

  instance.feasible_sets.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    instance.feasible_sets[i] = ranking::feasible_set(
        instance.devices[i], instance.fns, instance.links, n);
  }

  const std::vector<double> weights =
      ranking::ahp_weights(ranking::ahp_matrix_from_ratio(ahp_ratio));
  instance.pair_costs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Task& task = instance.tasks[i];
    auto& row = instance.pair_costs[i];
    row.reserve(instance.feasible_sets[i].size());
    for (std::uint32_t fn_id : instance.feasible_sets[i]) {
      const FogNode& fn = instance.fns[fn_id];
      const LinkState& link = instance.link(task.id, fn_id);
      const double tt =
          model::transmission_time(task.size_bits, link.uplink_bps);
      const double et = model::execution_time(task.cycles, fn.vru_rate_hz);
      PairCost cost;
      cost.task_id = task.id;
      cost.fn_id = fn_id;
      cost.latency_s = model::total_latency(tt, et);
      cost.energy_j = model::total_energy(
          model::transmission_energy(instance.devices[i].tx_power_w, tt),
          model::execution_energy(et, fn.compute_power_w));
      cost.noise_power_w = noise_power_w;
      row.push_back(cost);
    }
    const ranking::DeviceRanking ranked =
        ranking::device_preferences(row, weights[0], weights[1]);
    for (std::size_t r = 0; r < row.size(); ++r) {
      row[r].utility = ranked.utilities[r];
    }
  }
  return instance;
}

Instance generate(const ScenarioConfig& config, std::uint64_t seed) {
  validate_config(config);
  Rng rng(seed);

  // Fixed draw order: SPs, then FNs (per SP), then devices, then tasks.
  std::vector<ServiceProvider> sps(config.num_sps);
  for (std::uint32_t k = 0; k < config.num_sps; ++k) {
    sps[k].id = k;
    sps[k].bandwidth_hz = config.bandwidth_hz;
    sps[k].tariff_usd_per_mbps =
        rng.uniform(config.tariff_range.lo, config.tariff_range.hi);
  }

  std::vector<FogNode> fns(std::size_t{config.num_sps} * config.fns_per_sp);
  for (std::uint32_t k = 0; k < config.num_sps; ++k) {
    for (std::uint32_t slot = 0; slot < config.fns_per_sp; ++slot) {
      FogNode& fn = fns[std::size_t{k} * config.fns_per_sp + slot];
      fn.id = k * config.fns_per_sp + slot;
      fn.sp_id = k;
      fn.x_m = rng.uniform(config.field_range.lo, config.field_range.hi);
      fn.y_m = rng.uniform(config.field_range.lo, config.field_range.hi);
      fn.vru_count = static_cast<std::uint32_t>(rng.uniform_int(
          static_cast<std::uint64_t>(config.vru_range.lo),
          static_cast<std::uint64_t>(config.vru_range.hi)));
      fn.host_rate_hz =
          rng.uniform(config.host_rate_range.lo, config.host_rate_range.hi);
      fn.compute_power_w = rng.uniform(config.compute_power_range.lo,
                                       config.compute_power_range.hi);
      fn.vru_rate_hz = config.vru_rate_mode == VruRateMode::kHostDivided
                           ? fn.host_rate_hz / fn.vru_count
                           : fn.host_rate_hz;
    }
  }

  std::vector<IoTDevice> devices(config.num_tasks);
  for (std::uint32_t i = 0; i < config.num_tasks; ++i) {
    devices[i].id = i;
    devices[i].x_m = rng.uniform(config.field_range.lo, config.field_range.hi);
    devices[i].y_m = rng.uniform(config.field_range.lo, config.field_range.hi);
    devices[i].coverage_m =
        rng.uniform(config.coverage_range.lo, config.coverage_range.hi);
    devices[i].tx_power_w = config.tx_power_w;
  }

  std::vector<Task> tasks(config.num_tasks);
  for (std::uint32_t i = 0; i < config.num_tasks; ++i) {
    tasks[i].id = i;
    tasks[i].size_bits = rng.uniform(config.size_range.lo, config.size_range.hi);
    tasks[i].cycles =
        rng.uniform(config.cycles_range.lo, config.cycles_range.hi);
    tasks[i].deadline_s =
        rng.uniform(config.deadline_range.lo, config.deadline_range.hi);
  }

  return materialize(std::move(sps), std::move(fns), std::move(devices),
                     std::move(tasks), config.noise_power_w, config.ahp_ratio);
}

namespace {

json sp_to_json(const ServiceProvider& sp) {
  return json{{"id", sp.id},
              {"tariff_usd_per_mbps", sp.tariff_usd_per_mbps},
              {"bandwidth_hz", sp.bandwidth_hz},
              {"capacity", sp.capacity},
              {"subchannel_hz", sp.subchannel_hz},
              {"fn_ids", sp.fn_ids}};
}

json fn_to_json(const FogNode& fn) {
  return json{{"id", fn.id},
              {"sp_id", fn.sp_id},
              {"x_m", fn.x_m},
              {"y_m", fn.y_m},
              {"vru_count", fn.vru_count},
              {"host_rate_hz", fn.host_rate_hz},
              {"vru_rate_hz", fn.vru_rate_hz},
              {"compute_power_w", fn.compute_power_w}};
}

}  // namespace

std::string serialize_instance(const Instance& instance) {
  json root;
  root["noise_power_w"] = instance.noise_power_w;
  auto& sps = root["sps"] = json::array();
  for (const ServiceProvider& sp : instance.sps) sps.push_back(sp_to_json(sp));
  auto& fns = root["fns"] = json::array();
  for (const FogNode& fn : instance.fns) fns.push_back(fn_to_json(fn));
  auto& devices = root["devices"] = json::array();
  for (const IoTDevice& device : instance.devices) {
    devices.push_back(json{{"id", device.id},
                           {"x_m", device.x_m},
                           {"y_m", device.y_m},
                           {"coverage_m", device.coverage_m},
                           {"tx_power_w", device.tx_power_w}});
  }
  auto& tasks = root["tasks"] = json::array();
  for (const Task& task : instance.tasks) {
    tasks.push_back(json{{"id", task.id},
                         {"size_bits", task.size_bits},
                         {"cycles", task.cycles},
                         {"deadline_s", task.deadline_s}});
  }
  auto& links = root["links"] = json::array();
  for (const LinkState& link : instance.links) {
    links.push_back(json{{"device_id", link.device_id},
                         {"fn_id", link.fn_id},
                         {"distance_m", link.distance_m},
                         {"path_loss_db", link.path_loss_db},
                         {"gain", link.gain},
                         {"uplink_bps", link.uplink_bps}});
  }
  root["feasible_sets"] = instance.feasible_sets;
  auto& costs = root["pair_costs"] = json::array();
  for (const auto& row : instance.pair_costs) {
    json jrow = json::array();
    for (const PairCost& cost : row) {
      jrow.push_back(json{{"task_id", cost.task_id},
                          {"fn_id", cost.fn_id},
                          {"latency_s", cost.latency_s},
                          {"energy_j", cost.energy_j},
                          {"utility", cost.utility},
                          {"noise_power_w", cost.noise_power_w}});
    }
    costs.push_back(std::move(jrow));
  }
  return root.dump(2) + "\n";
}

Instance deserialize_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& err) {
    throw std::runtime_error(std::string("instance parse: ") + err.what());
  }
  Instance instance;
  try {
    instance.noise_power_w = root.at("noise_power_w").get<double>();
    for (const json& item : root.at("sps")) {
      ServiceProvider sp;
      sp.id = item.at("id").get<std::uint32_t>();
      sp.tariff_usd_per_mbps = item.at("tariff_usd_per_mbps").get<double>();
      sp.bandwidth_hz = item.at("bandwidth_hz").get<double>();
      sp.capacity = item.at("capacity").get<std::uint32_t>();
      sp.subchannel_hz = item.at("subchannel_hz").get<double>();
      sp.fn_ids = item.at("fn_ids").get<std::vector<std::uint32_t>>();
      instance.sps.push_back(std::move(sp));
    }
    for (const json& item : root.at("fns")) {
      FogNode fn;
      fn.id = item.at("id").get<std::uint32_t>();
      fn.sp_id = item.at("sp_id").get<std::uint32_t>();
      fn.x_m = item.at("x_m").get<double>();
      fn.y_m = item.at("y_m").get<double>();
      fn.vru_count = item.at("vru_count").get<std::uint32_t>();
      fn.host_rate_hz = item.at("host_rate_hz").get<double>();
      fn.vru_rate_hz = item.at("vru_rate_hz").get<double>();
      fn.compute_power_w = item.at("compute_power_w").get<double>();
      instance.fns.push_back(fn);
    }
    for (const json& item : root.at("devices")) {
      IoTDevice device;
      device.id = item.at("id").get<std::uint32_t>();
      device.x_m = item.at("x_m").get<double>();
      device.y_m = item.at("y_m").get<double>();
      device.coverage_m = item.at("coverage_m").get<double>();
      device.tx_power_w = item.at("tx_power_w").get<double>();
      instance.devices.push_back(device);
    }
    for (const json& item : root.at("tasks")) {
      Task task;
      task.id = item.at("id").get<std::uint32_t>();
      task.size_bits = item.at("size_bits").get<double>();
      task.cycles = item.at("cycles").get<double>();
      task.deadline_s = item.at("deadline_s").get<double>();
      instance.tasks.push_back(task);
    }
    for (const json& item : root.at("links")) {
      LinkState link;
      link.device_id = item.at("device_id").get<std::uint32_t>();
      link.fn_id = item.at("fn_id").get<std::uint32_t>();
      link.distance_m = item.at("distance_m").get<double>();
      link.path_loss_db = item.at("path_loss_db").get<double>();
      link.gain = item.at("gain").get<double>();
      link.uplink_bps = item.at("uplink_bps").get<double>();
      instance.links.push_back(link);
    }
    instance.feasible_sets =
        root.at("feasible_sets").get<std::vector<std::vector<std::uint32_t>>>();
    for (const json& jrow : root.at("pair_costs")) {
      std::vector<PairCost> row;
      for (const json& item : jrow) {
        PairCost cost;
        cost.task_id = item.at("task_id").get<std::uint32_t>();
        cost.fn_id = item.at("fn_id").get<std::uint32_t>();
        cost.latency_s = item.at("latency_s").get<double>();
        cost.energy_j = item.at("energy_j").get<double>();
        cost.utility = item.at("utility").get<double>();
        cost.noise_power_w = item.at("noise_power_w").get<double>();
        row.push_back(cost);
      }
      instance.pair_costs.push_back(std::move(row));
    }
  } catch (const json::exception& err) {
    throw std::runtime_error(std::string("instance parse: ") + err.what());
  }

  const std::size_t m = instance.devices.size();
  if (instance.tasks.size() != m || instance.feasible_sets.size() != m ||
      instance.pair_costs.size() != m ||
      instance.links.size() != m * instance.fns.size()) {
    throw std::runtime_error("instance parse: inconsistent section sizes");
  }
  return instance;
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write instance file '" + path + "'");
  file << serialize_instance(instance);
  if (!file) throw std::runtime_error("failed writing instance file '" + path + "'");
}

Instance load_instance(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return deserialize_instance(buffer.str());
}

}  // namespace spato::scenario
