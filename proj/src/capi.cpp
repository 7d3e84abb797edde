// C ABI wrapper: opaque handles over the core library, status-code error
// reporting, and text formats for instances and matchings.
#include "spato/spato.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "baselines.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "ranking.hpp"
#include "scenario.hpp"
#include "spa.hpp"
#include "types.hpp"

namespace {

constexpr std::uint32_t kConfigMagic = 0x434F4E46u;    // "CONF"
constexpr std::uint32_t kInstanceMagic = 0x494E5354u;  // "INST"
constexpr std::uint32_t kMatchingMagic = 0x4D415443u;  // "MATC"
constexpr std::uint32_t kFreedMagic = 0xDEADDEADu;

thread_local std::string t_last_error;

int fail(int status, std::string message) {
  t_last_error = std::move(message);
  return status;
}

int ok() {
  t_last_error.clear();
  return SPATO_OK;
}

}  // namespace

struct spato_config {
  std::uint32_t magic = kConfigMagic;
  spato::scenario::ScenarioConfig cfg;
};

struct spato_instance {
  std::uint32_t magic = kInstanceMagic;
  spato::Instance inst;
  spato::spa::MatchingProblem problem;
  spato::ranking::PreferenceProfile profile_spato;
  spato::ranking::PreferenceProfile profile_smeto;
  std::uint64_t fingerprint = 0;
};

struct spato_matching {
  std::uint32_t magic = kMatchingMagic;
  spato::spa::Matching matching;
  std::vector<spato_match_record> records;  // ascending task id
  std::uint64_t instance_fingerprint = 0;
};

namespace {

bool config_ok(const spato_config* c) { return c != nullptr && c->magic == kConfigMagic; }
bool instance_ok(const spato_instance* h) {
  return h != nullptr && h->magic == kInstanceMagic;
}
bool matching_ok(const spato_matching* h) {
  return h != nullptr && h->magic == kMatchingMagic;
}

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

void hash_mix(std::uint64_t& h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  hash_mix(h, bits);
}

std::uint64_t fingerprint_instance(const spato::Instance& inst) {
  std::uint64_t h = 0x535041544Full;  // "SPATO"
  hash_mix(h, static_cast<std::uint64_t>(inst.sps.size()));
  hash_mix(h, static_cast<std::uint64_t>(inst.fns.size()));
  hash_mix(h, static_cast<std::uint64_t>(inst.tasks.size()));
  hash_mix(h, inst.noise_power_w);
  for (const auto& sp : inst.sps) {
    hash_mix(h, sp.tariff_usd_per_mbps);
    hash_mix(h, static_cast<std::uint64_t>(sp.capacity));
  }
  for (const auto& fn : inst.fns) {
    hash_mix(h, static_cast<std::uint64_t>(fn.vru_count));
    hash_mix(h, fn.vru_rate_hz);
    hash_mix(h, fn.x_m);
    hash_mix(h, fn.y_m);
  }
  for (const auto& task : inst.tasks) {
    hash_mix(h, task.size_bits);
    hash_mix(h, task.cycles);
    hash_mix(h, task.deadline_s);
  }
  for (const auto& link : inst.links) hash_mix(h, link.gain);
  return h;
}

void derive_views(spato_instance& handle) {
  handle.problem = spato::spa::problem_from_instance(handle.inst);
  handle.profile_spato = spato::ranking::build_spato_profile(handle.inst);
  handle.profile_smeto = spato::ranking::build_smeto_profile(handle.inst);
  handle.fingerprint = fingerprint_instance(handle.inst);
}

spato_match_record make_record(const spato::Instance& inst, std::uint32_t task_id,
                               std::uint32_t fn_id) {
  namespace model = spato::model;
  const spato::Task& task = inst.tasks[task_id];
  const spato::FogNode& fn = inst.fns[fn_id];
  const spato::LinkState& link = inst.link(task_id, fn_id);
  const double tt = model::transmission_time(task.size_bits, link.uplink_bps);
  const double et = model::execution_time(task.cycles, fn.vru_rate_hz);
  const double latency = model::total_latency(tt, et);
  const double energy = model::total_energy(
      model::transmission_energy(inst.devices[task_id].tx_power_w, tt),
      model::execution_energy(et, fn.compute_power_w));
  spato_match_record record;
  record.task_id = task_id;
  record.fn_id = fn_id;
  record.sp_id = fn.sp_id;
  record.latency_s = latency;
  record.energy_j = energy;
  record.met_deadline = latency <= task.deadline_s ? 1 : 0;
  return record;
}

void build_records(spato_matching& handle, const spato::Instance& inst) {
  handle.records.clear();
  for (std::uint32_t i = 0; i < handle.matching.task_to_fn.size(); ++i) {
    if (!handle.matching.is_matched(i)) continue;
    handle.records.push_back(make_record(inst, i, handle.matching.task_to_fn[i]));
  }
}

const spato::ranking::PreferenceProfile* profile_for(const spato_instance* inst,
                                                     int profile) {
  switch (profile) {
    case SPATO_PROFILE_SPATO:
      return &inst->profile_spato;
    case SPATO_PROFILE_SMETO:
      return &inst->profile_smeto;
    default:
      return nullptr;
  }
}

// --- matching text format -------------------------------------------------

constexpr char kMatchingHeader[] = "task_id,fn_id,sp_id,latency_s,energy_j,met_deadline";

std::string format_matching(const spato_matching& handle) {
  std::string out(kMatchingHeader);
  out.push_back('\n');
  char buf[160];
  for (const auto& r : handle.records) {
    std::snprintf(buf, sizeof buf, "%u,%u,%u,%.17g,%.17g,%d\n", r.task_id, r.fn_id,
                  r.sp_id, r.latency_s, r.energy_j, r.met_deadline);
    out += buf;
  }
  return out;
}

bool parse_u32(const std::string& text, std::uint32_t& out) {
  if (text.empty()) return false;
  std::uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
    if (value > std::numeric_limits<std::uint32_t>::max()) return false;
  }
  out = static_cast<std::uint32_t>(value);
  return true;
}

bool parse_f64(const std::string& text, double& out) {
  if (text.empty()) return false;
  try {
    std::size_t pos = 0;
    out = std::stod(text, &pos);
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

bool close_enough(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-9 * scale;
}

// Parses and cross-checks a matching file against the instance it claims to
// describe. Accepts infeasible assignments (verification reports those); a
// numeric column that disagrees with the instance is a parse error.
spato::spa::Matching parse_matching_text(const std::string& text,
                                         const spato_instance& inst,
                                         std::string& error) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    error = "empty file";
    return {};
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMatchingHeader) {
    error = "bad header, expected \"" + std::string(kMatchingHeader) + "\"";
    return {};
  }
  const std::uint32_t num_tasks = static_cast<std::uint32_t>(inst.inst.tasks.size());
  const std::uint32_t num_fns = static_cast<std::uint32_t>(inst.inst.fns.size());
  std::vector<std::uint32_t> task_to_fn(num_tasks, spato::spa::Matching::kUnmatched);
  std::uint32_t last_task = 0;
  bool first_row = true;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    std::uint32_t task_id = 0, fn_id = 0, sp_id = 0, met = 0;
    double latency = 0.0, energy = 0.0;
    if (fields.size() != 6 || !parse_u32(fields[0], task_id) ||
        !parse_u32(fields[1], fn_id) || !parse_u32(fields[2], sp_id) ||
        !parse_f64(fields[3], latency) || !parse_f64(fields[4], energy) ||
        !parse_u32(fields[5], met) || met > 1) {
      error = "line " + std::to_string(line_no) + ": malformed row";
      return {};
    }
    if (task_id >= num_tasks || fn_id >= num_fns) {
      error = "line " + std::to_string(line_no) + ": task or fn id out of range";
      return {};
    }
    if (!first_row && task_id <= last_task) {
      error = "line " + std::to_string(line_no) + ": task ids not strictly ascending";
      return {};
    }
    first_row = false;
    last_task = task_id;
    const spato_match_record expect = make_record(inst.inst, task_id, fn_id);
    if (sp_id != expect.sp_id || !close_enough(latency, expect.latency_s) ||
        !close_enough(energy, expect.energy_j) ||
        static_cast<int>(met) != expect.met_deadline) {
      error = "line " + std::to_string(line_no) + ": row disagrees with instance";
      return {};
    }
    task_to_fn[task_id] = fn_id;
  }
  error.clear();
  return spato::spa::matching_from_assignment(inst.problem, task_to_fn);
}

bool read_file(const std::string& path, std::string& out, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot open " + path;
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    error = "read failed on " + path;
    return false;
  }
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content,
                std::string& error) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    error = "cannot open " + path + " for writing";
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    error = "write failed on " + path;
    return false;
  }
  return true;
}

}  // namespace

extern "C" {

const char* spato_version(void) { return "1.0.0"; }

const char* spato_last_error(void) { return t_last_error.c_str(); }

const char* spato_status_name(int status) {
  switch (status) {
    case SPATO_OK: return "SPATO_OK";
    case SPATO_ERR_INVALID_ARGUMENT: return "SPATO_ERR_INVALID_ARGUMENT";
    case SPATO_ERR_PARSE: return "SPATO_ERR_PARSE";
    case SPATO_ERR_VALIDATION: return "SPATO_ERR_VALIDATION";
    case SPATO_ERR_IO: return "SPATO_ERR_IO";
    case SPATO_ERR_LIMIT: return "SPATO_ERR_LIMIT";
    case SPATO_ERR_INTERNAL: return "SPATO_ERR_INTERNAL";
    default: return "SPATO_ERR_UNKNOWN";
  }
}

int spato_config_create(spato_config** out) {
  if (out == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = new spato_config();
  return ok();
}

int spato_config_load(const char* path, spato_config** out) {
  if (path == nullptr || out == nullptr) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "path or out is NULL");
  }
  *out = nullptr;
  std::string text, io_error;
  if (!read_file(path, text, io_error)) return fail(SPATO_ERR_IO, io_error);
  try {
    auto handle = new spato_config();
    handle->cfg = spato::scenario::parse_config(text);
    *out = handle;
    return ok();
  } catch (const spato::scenario::ConfigError& e) {
    return fail(SPATO_ERR_PARSE, std::string(path) + ": " + e.what());
  }
}

int spato_config_set(spato_config* config, const char* key, const char* value) {
  if (!config_ok(config)) return fail(SPATO_ERR_INVALID_ARGUMENT, "bad config handle");
  if (key == nullptr || value == nullptr) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "key or value is NULL");
  }
  try {
    spato::scenario::config_set(config->cfg, key, value);
    return ok();
  } catch (const spato::scenario::ConfigError& e) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, e.what());
  }
}

int spato_config_get(const spato_config* config, const char* key, char* buffer,
                     size_t size) {
  if (!config_ok(config)) return fail(SPATO_ERR_INVALID_ARGUMENT, "bad config handle");
  if (key == nullptr || buffer == nullptr) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "key or buffer is NULL");
  }
  try {
    const std::string value = spato::scenario::config_get(config->cfg, key);
    if (value.size() + 1 > size) {
      return fail(SPATO_ERR_LIMIT,
                  "need " + std::to_string(value.size() + 1) + " bytes");
    }
    std::memcpy(buffer, value.c_str(), value.size() + 1);
    return ok();
  } catch (const spato::scenario::ConfigError& e) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, e.what());
  }
}

void spato_config_free(spato_config* config) {
  if (config_ok(config)) {
    config->magic = kFreedMagic;
    delete config;
  }
}

int spato_instance_generate(const spato_config* config, uint64_t seed,
                            spato_instance** out) {
  if (!config_ok(config)) return fail(SPATO_ERR_INVALID_ARGUMENT, "bad config handle");
  if (out == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  try {
    auto handle = new spato_instance();
    handle->inst = spato::scenario::generate(config->cfg, seed);
    derive_views(*handle);
    *out = handle;
    return ok();
  } catch (const spato::scenario::ConfigError& e) {
    return fail(SPATO_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_INTERNAL, e.what());
  }
}

int spato_instance_save(const spato_instance* instance, const char* path) {
  if (!instance_ok(instance)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad instance handle");
  }
  if (path == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "path is NULL");
  std::string io_error;
  if (!write_file(path, spato::scenario::serialize_instance(instance->inst), io_error)) {
    return fail(SPATO_ERR_IO, io_error);
  }
  return ok();
}

int spato_instance_load(const char* path, spato_instance** out) {
  if (path == nullptr || out == nullptr) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "path or out is NULL");
  }
  *out = nullptr;
  std::string text, io_error;
  if (!read_file(path, text, io_error)) return fail(SPATO_ERR_IO, io_error);
  try {
    auto handle = new spato_instance();
    handle->inst = spato::scenario::deserialize_instance(text);
    derive_views(*handle);
    *out = handle;
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_PARSE, std::string(path) + ": " + e.what());
  }
}

int spato_instance_counts(const spato_instance* instance, uint32_t* tasks,
                          uint32_t* fns, uint32_t* sps) {
  if (!instance_ok(instance)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad instance handle");
  }
  if (tasks != nullptr) *tasks = static_cast<uint32_t>(instance->inst.tasks.size());
  if (fns != nullptr) *fns = static_cast<uint32_t>(instance->inst.fns.size());
  if (sps != nullptr) *sps = static_cast<uint32_t>(instance->inst.sps.size());
  return ok();
}

void spato_instance_free(spato_instance* instance) {
  if (instance_ok(instance)) {
    instance->magic = kFreedMagic;
    delete instance;
  }
}

int spato_allocate(const spato_instance* instance, int allocator, uint64_t rng_seed,
                   int worklist, spato_matching** out) {
  if (!instance_ok(instance)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad instance handle");
  }
  if (out == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  if (worklist != SPATO_WORKLIST_FIFO && worklist != SPATO_WORKLIST_LIFO) {
    return fail(SPATO_ERR_INVALID_ARGUMENT,
                "worklist must be SPATO_WORKLIST_FIFO or SPATO_WORKLIST_LIFO");
  }
  try {
    spato::spa::Matching matching;
    switch (allocator) {
      case SPATO_ALLOCATOR_SPATO:
        matching = spato::spa::run_spato(instance->problem, instance->profile_spato,
                                         worklist == SPATO_WORKLIST_FIFO
                                             ? spato::spa::Worklist::kFifo
                                             : spato::spa::Worklist::kLifo);
        break;
      case SPATO_ALLOCATOR_SMETO:
        matching = spato::baselines::run_deferred_acceptance(instance->problem,
                                                             instance->profile_smeto);
        break;
      case SPATO_ALLOCATOR_RANDOM:
        matching = spato::baselines::run_random(instance->problem,
                                                instance->inst.feasible_sets, rng_seed);
        break;
      default:
        return fail(SPATO_ERR_INVALID_ARGUMENT, "unknown allocator");
    }
    auto handle = new spato_matching();
    handle->matching = std::move(matching);
    handle->instance_fingerprint = instance->fingerprint;
    build_records(*handle, instance->inst);
    *out = handle;
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_INTERNAL, e.what());
  }
}

int spato_matching_count(const spato_matching* matching, uint32_t* matched) {
  if (!matching_ok(matching)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad matching handle");
  }
  if (matched == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "matched is NULL");
  *matched = static_cast<uint32_t>(matching->records.size());
  return ok();
}

int spato_matching_record(const spato_matching* matching, uint32_t index,
                          spato_match_record* record) {
  if (!matching_ok(matching)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad matching handle");
  }
  if (record == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "record is NULL");
  if (index >= matching->records.size()) {
    return fail(SPATO_ERR_INVALID_ARGUMENT,
                "index " + std::to_string(index) + " out of range");
  }
  *record = matching->records[index];
  return ok();
}

int spato_matching_save(const spato_matching* matching, const char* path) {
  if (!matching_ok(matching)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad matching handle");
  }
  if (path == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "path is NULL");
  std::string io_error;
  if (!write_file(path, format_matching(*matching), io_error)) {
    return fail(SPATO_ERR_IO, io_error);
  }
  return ok();
}

int spato_matching_load(const char* path, const spato_instance* instance,
                        spato_matching** out) {
  if (path == nullptr || out == nullptr) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "path or out is NULL");
  }
  if (!instance_ok(instance)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad instance handle");
  }
  *out = nullptr;
  std::string text, io_error;
  if (!read_file(path, text, io_error)) return fail(SPATO_ERR_IO, io_error);
  std::string parse_error;
  try {
    spato::spa::Matching parsed = parse_matching_text(text, *instance, parse_error);
    if (!parse_error.empty()) {
      return fail(SPATO_ERR_PARSE, std::string(path) + ": " + parse_error);
    }
    auto handle = new spato_matching();
    handle->matching = std::move(parsed);
    handle->instance_fingerprint = instance->fingerprint;
    build_records(*handle, instance->inst);
    *out = handle;
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_PARSE, std::string(path) + ": " + e.what());
  }
}

void spato_matching_free(spato_matching* matching) {
  if (matching_ok(matching)) {
    matching->magic = kFreedMagic;
    delete matching;
  }
}

namespace {

int check_pair(const spato_instance* instance, const spato_matching* matching) {
  if (!instance_ok(instance)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad instance handle");
  }
  if (!matching_ok(matching)) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "bad matching handle");
  }
  if (matching->instance_fingerprint != instance->fingerprint) {
    return fail(SPATO_ERR_INVALID_ARGUMENT,
                "matching does not belong to this instance");
  }
  return SPATO_OK;
}

}  // namespace

int spato_verify(const spato_instance* instance, const spato_matching* matching,
                 int profile, spato_verify_report* report) {
  const int paired = check_pair(instance, matching);
  if (paired != SPATO_OK) return paired;
  if (report == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "report is NULL");
  const auto* prefs = profile_for(instance, profile);
  if (prefs == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "unknown profile");
  try {
    const auto conditions =
        spato::spa::check_conditions(instance->problem, *prefs, matching->matching);
    const auto stability =
        spato::spa::verify_stability(instance->problem, *prefs, matching->matching);
    std::memset(report, 0, sizeof *report);
    report->stable = stability.stable ? 1 : 0;
    report->blocking_pairs = static_cast<uint32_t>(stability.blocking_pairs.size());
    report->task_single_fn = conditions.task_single_fn ? 1 : 0;
    report->fn_within_quota = conditions.fn_within_quota ? 1 : 0;
    report->sp_within_capacity = conditions.sp_within_capacity ? 1 : 0;
    report->views_consistent = conditions.views_consistent ? 1 : 0;
    report->pairs_feasible = conditions.pairs_feasible ? 1 : 0;
    std::strncpy(report->detail, conditions.detail.c_str(), sizeof report->detail - 1);
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_INTERNAL, e.what());
  }
}

int spato_blocking_pairs(const spato_instance* instance, const spato_matching* matching,
                         int profile, spato_blocking_pair* pairs, uint32_t capacity,
                         uint32_t* count) {
  const int paired = check_pair(instance, matching);
  if (paired != SPATO_OK) return paired;
  if (count == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "count is NULL");
  if (pairs == nullptr && capacity > 0) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "pairs is NULL with nonzero capacity");
  }
  const auto* prefs = profile_for(instance, profile);
  if (prefs == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "unknown profile");
  try {
    const auto stability =
        spato::spa::verify_stability(instance->problem, *prefs, matching->matching);
    *count = static_cast<uint32_t>(stability.blocking_pairs.size());
    const uint32_t fill = std::min<uint32_t>(capacity, *count);
    for (uint32_t i = 0; i < fill; ++i) {
      pairs[i].task_id = stability.blocking_pairs[i].task_id;
      pairs[i].fn_id = stability.blocking_pairs[i].fn_id;
    }
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_INTERNAL, e.what());
  }
}

int spato_compute_metrics(const spato_instance* instance, const spato_matching* matching,
                          spato_metrics* out) {
  const int paired = check_pair(instance, matching);
  if (paired != SPATO_OK) return paired;
  if (out == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "out is NULL");
  try {
    const auto summary = spato::metrics::summarize(instance->inst, matching->matching);
    out->total_energy_j = summary.total_energy_j;
    out->mean_offload_time_s = summary.mean_offload_time_s;
    out->matched = summary.matched;
    out->on_time = summary.on_time;
    out->unmatched = summary.outage.unmatched;
    out->late = summary.outage.late;
    out->outages = summary.outage.outages;
    out->outage_rate = summary.outage_rate;
    out->revenue_total_usd = summary.revenue.total_usd;
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_INTERNAL, e.what());
  }
}

int spato_revenue_per_sp(const spato_instance* instance, const spato_matching* matching,
                         double* values, uint32_t capacity, uint32_t* count) {
  const int paired = check_pair(instance, matching);
  if (paired != SPATO_OK) return paired;
  if (count == nullptr) return fail(SPATO_ERR_INVALID_ARGUMENT, "count is NULL");
  *count = static_cast<uint32_t>(instance->inst.sps.size());
  if (capacity < *count) {
    return fail(SPATO_ERR_LIMIT, "need capacity " + std::to_string(*count));
  }
  if (values == nullptr && *count > 0) {
    return fail(SPATO_ERR_INVALID_ARGUMENT, "values is NULL");
  }
  try {
    const auto revenue = spato::metrics::revenue(instance->inst, matching->matching);
    for (uint32_t k = 0; k < *count; ++k) values[k] = revenue.per_sp[k];
    return ok();
  } catch (const std::exception& e) {
    return fail(SPATO_ERR_INTERNAL, e.what());
  }
}

}  // extern "C"
