// Command-line front end over the shared library's C API: sweep experiments,
// single-instance generation/allocation, and matching verification.
#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spato/spato.h"

namespace {

struct ConfigDeleter {
  void operator()(spato_config* p) const { spato_config_free(p); }
};
struct InstanceDeleter {
  void operator()(spato_instance* p) const { spato_instance_free(p); }
};
struct MatchingDeleter {
  void operator()(spato_matching* p) const { spato_matching_free(p); }
};
using ConfigPtr = std::unique_ptr<spato_config, ConfigDeleter>;
using InstancePtr = std::unique_ptr<spato_instance, InstanceDeleter>;
using MatchingPtr = std::unique_ptr<spato_matching, MatchingDeleter>;

[[noreturn]] void die(int status, const std::string& context) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", context.c_str(), spato_last_error(),
               spato_status_name(status));
  std::exit(1);
}

void check(int status, const std::string& context) {
  if (status != SPATO_OK) die(status, context);
}

ConfigPtr load_config_or_default(const std::string& path) {
  spato_config* cfg = nullptr;
  if (path.empty()) {
    check(spato_config_create(&cfg), "create config");
  } else {
    check(spato_config_load(path.c_str(), &cfg), "load config " + path);
  }
  return ConfigPtr(cfg);
}

int allocator_from_name(const std::string& name) {
  if (name == "spato") return SPATO_ALLOCATOR_SPATO;
  if (name == "smeto") return SPATO_ALLOCATOR_SMETO;
  if (name == "random") return SPATO_ALLOCATOR_RANDOM;
  return -1;
}

int worklist_from_name(const std::string& name) {
  if (name == "fifo") return SPATO_WORKLIST_FIFO;
  if (name == "lifo") return SPATO_WORKLIST_LIFO;
  return -1;
}

// Comma-separated values and inclusive ranges: "1,4..6,9" -> 1,4,5,6,9.
// Returns false on malformed input; output is sorted and deduplicated.
bool parse_seed_list(const std::string& text, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (token.empty()) return false;
    const std::size_t dots = token.find("..");
    try {
      std::size_t used = 0;
      if (dots == std::string::npos) {
        const std::uint64_t v = std::stoull(token, &used);
        if (used != token.size()) return false;
        out.push_back(v);
      } else {
        const std::string lo_s = token.substr(0, dots);
        const std::string hi_s = token.substr(dots + 2);
        if (lo_s.empty() || hi_s.empty()) return false;
        const std::uint64_t lo = std::stoull(lo_s, &used);
        if (used != lo_s.size()) return false;
        const std::uint64_t hi = std::stoull(hi_s, &used);
        if (used != hi_s.size()) return false;
        if (hi < lo || hi - lo > 1000000) return false;
        for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      return false;
    }
    if (comma == text.size()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return !out.empty();
}

struct CellResult {
  std::string allocator;
  std::uint32_t num_tasks = 0;
  std::uint64_t seed = 0;
  spato_metrics metrics{};
  double runtime_ms = 0.0;
};

constexpr char kRawHeader[] =
    "allocator,num_tasks,seed,total_energy_j,mean_offload_time_s,outages,"
    "outage_rate,revenue_total_usd,matched_count,runtime_ms";

std::string format_raw_row(const CellResult& r) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s,%u,%" PRIu64 ",%.10g,%.10g,%u,%.10g,%.10g,%u,%.3f",
                r.allocator.c_str(), r.num_tasks, r.seed, r.metrics.total_energy_j,
                r.metrics.mean_offload_time_s, r.metrics.outages, r.metrics.outage_rate,
                r.metrics.revenue_total_usd, r.metrics.matched, r.runtime_ms);
  return buf;
}

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n-1); 0 when n == 1
  std::size_t n = 0;
};

Aggregate aggregate_of(const std::vector<double>& values) {
  Aggregate agg;
  agg.n = values.size();
  if (agg.n == 0) return agg;
  double sum = 0.0;
  for (double v : values) sum += v;
  agg.mean = sum / static_cast<double>(agg.n);
  if (agg.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.stddev = std::sqrt(ss / static_cast<double>(agg.n - 1));
  }
  return agg;
}

void write_text_or_die(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", path.c_str());
    std::exit(1);
  }
  out << content;
  out.flush();
  if (!out) {
    std::fprintf(stderr, "error: write failed on %s\n", path.c_str());
    std::exit(1);
  }
}

// Conditions are a hard invariant of every allocator; stability additionally
// gates the SPATO allocator when enabled. Exits nonzero naming the cell.
void verify_cell_or_die(spato_instance* inst, spato_matching* match,
                        const std::string& allocator, std::uint32_t num_tasks,
                        std::uint64_t seed, bool check_stability) {
  spato_verify_report report{};
  check(spato_verify(inst, match, SPATO_PROFILE_SPATO, &report), "verify");
  const char* violated = nullptr;
  if (!report.task_single_fn) violated = "task_single_fn";
  else if (!report.fn_within_quota) violated = "fn_within_quota";
  else if (!report.sp_within_capacity) violated = "sp_within_capacity";
  else if (!report.views_consistent) violated = "views_consistent";
  else if (!report.pairs_feasible) violated = "pairs_feasible";
  if (violated != nullptr) {
    std::fprintf(stderr,
                 "error: allocator=%s num_tasks=%u seed=%" PRIu64
                 " violates %s: %s\n",
                 allocator.c_str(), num_tasks, seed, violated, report.detail);
    std::exit(3);
  }
  if (check_stability && allocator == "spato" && !report.stable) {
    std::fprintf(stderr,
                 "error: allocator=spato num_tasks=%u seed=%" PRIu64
                 " is unstable (%u blocking pairs)\n",
                 num_tasks, seed, report.blocking_pairs);
    std::exit(3);
  }
}

int cmd_run(const std::string& config_path, const std::string& allocators_csv,
            const std::string& tasks_csv, const std::string& seeds_spec,
            const std::string& out_dir, const std::string& verify_mode,
            const std::string& worklist_name) {
  std::vector<std::string> allocators;
  {
    std::size_t pos = 0;
    while (pos <= allocators_csv.size()) {
      const std::size_t comma = std::min(allocators_csv.find(',', pos),
                                         allocators_csv.size());
      const std::string name = allocators_csv.substr(pos, comma - pos);
      pos = comma + 1;
      if (allocator_from_name(name) < 0) {
        std::fprintf(stderr, "error: unknown allocator \"%s\"\n", name.c_str());
        return 1;
      }
      if (std::find(allocators.begin(), allocators.end(), name) == allocators.end()) {
        allocators.push_back(name);
      }
      if (comma == allocators_csv.size()) break;
    }
  }
  std::vector<std::uint64_t> task_counts_raw;
  if (!parse_seed_list(tasks_csv, task_counts_raw)) {
    std::fprintf(stderr, "error: bad --tasks list \"%s\"\n", tasks_csv.c_str());
    return 1;
  }
  std::vector<std::uint64_t> seeds;
  if (!parse_seed_list(seeds_spec, seeds)) {
    std::fprintf(stderr, "error: bad --seeds list \"%s\"\n", seeds_spec.c_str());
    return 1;
  }
  if (verify_mode != "on" && verify_mode != "off") {
    std::fprintf(stderr, "error: --verify-stability must be on or off\n");
    return 1;
  }
  const int worklist = worklist_from_name(worklist_name);
  if (worklist < 0) {
    std::fprintf(stderr, "error: --worklist must be fifo or lifo\n");
    return 1;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", out_dir.c_str(),
                 ec.message().c_str());
    return 1;
  }

  const ConfigPtr base_config = load_config_or_default(config_path);
  std::vector<CellResult> rows;
  for (const std::string& allocator : allocators) {
    const int alloc_id = allocator_from_name(allocator);
    for (std::uint64_t tasks64 : task_counts_raw) {
      for (std::uint64_t seed : seeds) {
        CellResult cell;
        cell.allocator = allocator;
        cell.num_tasks = static_cast<std::uint32_t>(tasks64);
        cell.seed = seed;
        check(spato_config_set(base_config.get(), "num_tasks",
                               std::to_string(tasks64).c_str()),
              "set num_tasks");
        const auto t0 = std::chrono::steady_clock::now();
        spato_instance* inst_raw = nullptr;
        check(spato_instance_generate(base_config.get(), seed, &inst_raw),
              "generate instance");
        InstancePtr inst(inst_raw);
        spato_matching* match_raw = nullptr;
        check(spato_allocate(inst.get(), alloc_id, seed, worklist, &match_raw),
              "allocate");
        MatchingPtr match(match_raw);
        check(spato_compute_metrics(inst.get(), match.get(), &cell.metrics),
              "compute metrics");
        const auto t1 = std::chrono::steady_clock::now();
        cell.runtime_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        verify_cell_or_die(inst.get(), match.get(), allocator, cell.num_tasks, seed,
                           verify_mode == "on");
        rows.push_back(cell);
      }
      std::fprintf(stdout, "%s num_tasks=%" PRIu64 ": %zu seeds done\n",
                   allocator.c_str(), tasks64, seeds.size());
      std::fflush(stdout);
    }
  }

  std::string raw(kRawHeader);
  raw.push_back('\n');
  for (const CellResult& r : rows) {
    raw += format_raw_row(r);
    raw.push_back('\n');
  }
  const std::string raw_path = out_dir + "/raw.csv";
  write_text_or_die(raw_path, raw);

  static constexpr const char* kMetricNames[] = {
      "total_energy_j",    "mean_offload_time_s", "outages", "outage_rate",
      "revenue_total_usd", "matched_count",       "runtime_ms"};
  auto metric_value = [](const CellResult& r, int metric) -> double {
    switch (metric) {
      case 0: return r.metrics.total_energy_j;
      case 1: return r.metrics.mean_offload_time_s;
      case 2: return r.metrics.outages;
      case 3: return r.metrics.outage_rate;
      case 4: return r.metrics.revenue_total_usd;
      case 5: return r.metrics.matched;
      default: return r.runtime_ms;
    }
  };
  std::string agg("allocator,num_tasks,metric,mean,stddev,n\n");
  std::size_t agg_rows = 0;
  for (const std::string& allocator : allocators) {
    for (std::uint64_t tasks64 : task_counts_raw) {
      for (int metric = 0; metric < 7; ++metric) {
        std::vector<double> values;
        for (const CellResult& r : rows) {
          if (r.allocator == allocator && r.num_tasks == tasks64) {
            values.push_back(metric_value(r, metric));
          }
        }
        const Aggregate a = aggregate_of(values);
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%" PRIu64 ",%s,%.10g,%.10g,%zu\n",
                      allocator.c_str(), tasks64, kMetricNames[metric], a.mean,
                      a.stddev, a.n);
        agg += buf;
        ++agg_rows;
      }
    }
  }
  const std::string agg_path = out_dir + "/aggregate.csv";
  write_text_or_die(agg_path, agg);

  std::fprintf(stdout, "wrote %s (%zu rows), %s (%zu rows)\n", raw_path.c_str(),
               rows.size(), agg_path.c_str(), agg_rows);
  return 0;
}

int cmd_gen(const std::string& config_path, std::int64_t seed_opt,
            std::int64_t tasks_opt, const std::string& out_path) {
  const ConfigPtr cfg = load_config_or_default(config_path);
  if (tasks_opt >= 0) {
    check(spato_config_set(cfg.get(), "num_tasks",
                           std::to_string(tasks_opt).c_str()),
          "set num_tasks");
  }
  std::uint64_t seed;
  if (seed_opt >= 0) {
    seed = static_cast<std::uint64_t>(seed_opt);
  } else {
    char buf[64];
    check(spato_config_get(cfg.get(), "rng_seed", buf, sizeof buf), "get rng_seed");
    seed = std::strtoull(buf, nullptr, 10);
  }
  spato_instance* inst_raw = nullptr;
  check(spato_instance_generate(cfg.get(), seed, &inst_raw), "generate instance");
  InstancePtr inst(inst_raw);
  check(spato_instance_save(inst.get(), out_path.c_str()), "save " + out_path);
  uint32_t tasks = 0, fns = 0, sps = 0;
  check(spato_instance_counts(inst.get(), &tasks, &fns, &sps), "counts");
  std::fprintf(stdout, "wrote %s (%u tasks, %u fog nodes, %u providers, seed %" PRIu64
                       ")\n",
               out_path.c_str(), tasks, fns, sps, seed);
  return 0;
}

int cmd_alloc(const std::string& instance_path, const std::string& allocator,
              std::uint64_t seed, const std::string& worklist_name,
              const std::string& out_path) {
  const int alloc_id = allocator_from_name(allocator);
  if (alloc_id < 0) {
    std::fprintf(stderr, "error: unknown allocator \"%s\"\n", allocator.c_str());
    return 1;
  }
  const int worklist = worklist_from_name(worklist_name);
  if (worklist < 0) {
    std::fprintf(stderr, "error: --worklist must be fifo or lifo\n");
    return 1;
  }
  spato_instance* inst_raw = nullptr;
  check(spato_instance_load(instance_path.c_str(), &inst_raw),
        "load instance " + instance_path);
  InstancePtr inst(inst_raw);
  spato_matching* match_raw = nullptr;
  check(spato_allocate(inst.get(), alloc_id, seed, worklist, &match_raw), "allocate");
  MatchingPtr match(match_raw);
  check(spato_matching_save(match.get(), out_path.c_str()), "save " + out_path);
  spato_metrics metrics{};
  check(spato_compute_metrics(inst.get(), match.get(), &metrics), "compute metrics");
  std::fprintf(stdout,
               "wrote %s: matched %u, on-time %u, outages %u, energy %.6g J, "
               "mean time %.6g s, revenue %.6g USD\n",
               out_path.c_str(), metrics.matched, metrics.on_time, metrics.outages,
               metrics.total_energy_j, metrics.mean_offload_time_s,
               metrics.revenue_total_usd);
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& matching_path,
               const std::string& profile_name) {
  int profile;
  if (profile_name == "spato") {
    profile = SPATO_PROFILE_SPATO;
  } else if (profile_name == "smeto") {
    profile = SPATO_PROFILE_SMETO;
  } else {
    std::fprintf(stderr, "error: --profile must be spato or smeto\n");
    return 1;
  }
  spato_instance* inst_raw = nullptr;
  check(spato_instance_load(instance_path.c_str(), &inst_raw),
        "load instance " + instance_path);
  InstancePtr inst(inst_raw);
  spato_matching* match_raw = nullptr;
  check(spato_matching_load(matching_path.c_str(), inst.get(), &match_raw),
        "load matching " + matching_path);
  MatchingPtr match(match_raw);

  spato_verify_report report{};
  check(spato_verify(inst.get(), match.get(), profile, &report), "verify");
  const auto flag = [](int v) { return v ? "ok" : "VIOLATED"; };
  std::fprintf(stdout, "task_single_fn:     %s\n", flag(report.task_single_fn));
  std::fprintf(stdout, "fn_within_quota:    %s\n", flag(report.fn_within_quota));
  std::fprintf(stdout, "sp_within_capacity: %s\n", flag(report.sp_within_capacity));
  std::fprintf(stdout, "views_consistent:   %s\n", flag(report.views_consistent));
  std::fprintf(stdout, "pairs_feasible:     %s\n", flag(report.pairs_feasible));
  if (report.detail[0] != '\0') {
    std::fprintf(stdout, "detail: %s\n", report.detail);
  }
  std::fprintf(stdout, "stable under %s profile: %s (%u blocking pairs)\n",
               profile_name.c_str(), report.stable ? "yes" : "NO",
               report.blocking_pairs);
  if (!report.stable && report.blocking_pairs > 0) {
    const uint32_t show = std::min<uint32_t>(report.blocking_pairs, 20);
    std::vector<spato_blocking_pair> pairs(show);
    uint32_t total = 0;
    check(spato_blocking_pairs(inst.get(), match.get(), profile, pairs.data(), show,
                               &total),
          "blocking pairs");
    for (uint32_t i = 0; i < show; ++i) {
      std::fprintf(stdout, "  blocking: task %u -> fn %u\n", pairs[i].task_id,
                   pairs[i].fn_id);
    }
    if (total > show) std::fprintf(stdout, "  ... and %u more\n", total - show);
  }
  const bool all_ok = report.task_single_fn && report.fn_within_quota &&
                      report.sp_within_capacity && report.views_consistent &&
                      report.pairs_feasible && report.stable;
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable task offloading for multi-provider fog networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(spato_version()));

  std::string config_path, out_dir = "results";
  std::string allocators = "spato,smeto,random";
  std::string tasks = "250,500,750,1000";
  std::string seeds = "1..10";
  std::string verify_mode = "on";
  std::string worklist = "fifo";
  CLI::App* run = app.add_subcommand("run", "Sweep allocators over task counts and seeds");
  run->add_option("--config", config_path, "Scenario config file (defaults built in)");
  run->add_option("--allocators", allocators, "Comma list: spato,smeto,random");
  run->add_option("--tasks", tasks, "Task counts, e.g. 250,500 or 100..200");
  run->add_option("--seeds", seeds, "Seeds, e.g. 1..10 or 3,7,9");
  run->add_option("--out", out_dir, "Output directory for raw.csv/aggregate.csv");
  run->add_option("--verify-stability", verify_mode, "on|off: gate spato cells on stability");
  run->add_option("--worklist", worklist, "fifo|lifo proposal order (result-invariant)");

  std::string gen_config, gen_out = "instance.json";
  std::int64_t gen_seed = -1, gen_tasks = -1;
  CLI::App* gen = app.add_subcommand("gen", "Generate one instance to JSON");
  gen->add_option("--config", gen_config, "Scenario config file");
  gen->add_option("--seed", gen_seed, "Generation seed (default: config rng_seed)");
  gen->add_option("--tasks", gen_tasks, "Override num_tasks");
  gen->add_option("--out", gen_out, "Output instance path");

  std::string alloc_instance, alloc_name = "spato", alloc_out = "matching.csv";
  std::string alloc_worklist = "fifo";
  std::uint64_t alloc_seed = 1;
  CLI::App* alloc = app.add_subcommand("alloc", "Allocate one instance, write matching CSV");
  alloc->add_option("--instance", alloc_instance, "Instance JSON path")->required();
  alloc->add_option("--allocator", alloc_name, "spato|smeto|random");
  alloc->add_option("--seed", alloc_seed, "RNG seed (random allocator only)");
  alloc->add_option("--worklist", alloc_worklist, "fifo|lifo (spato allocator only)");
  alloc->add_option("--out", alloc_out, "Output matching path");

  std::string ver_instance, ver_matching, ver_profile = "spato";
  CLI::App* verify = app.add_subcommand("verify", "Check a matching against an instance");
  verify->add_option("--instance", ver_instance, "Instance JSON path")->required();
  verify->add_option("--matching", ver_matching, "Matching CSV path")->required();
  verify->add_option("--profile", ver_profile, "spato|smeto preference profile");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(config_path, allocators, tasks, seeds, out_dir, verify_mode,
                   worklist);
  }
  if (gen->parsed()) return cmd_gen(gen_config, gen_seed, gen_tasks, gen_out);
  if (alloc->parsed()) {
    return cmd_alloc(alloc_instance, alloc_name, alloc_seed, alloc_worklist, alloc_out);
  }
  return cmd_verify(ver_instance, ver_matching, ver_profile);
}
