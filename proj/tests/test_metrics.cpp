#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "metrics.hpp"
#include "spa.hpp"
#include "test_util.hpp"

using namespace spato;

namespace {

constexpr std::uint32_t kFree = spa::Matching::kUnmatched;
doctest::Approx near(double v) { return doctest::Approx(v).epsilon(1e-12); }

// Every device in tiny_instance reaches every node in ascending id order,
// so the cost row index equals the fn id.
const PairCost& cost_of(const Instance& inst, std::uint32_t task, std::uint32_t fn) {
  return inst.pair_costs[task][fn];
}

}  // namespace

TEST_CASE("metrics on a hand matching: energy, time, outages, revenue") {
  const Instance inst = testutil::tiny_instance();
  const auto problem = spa::problem_from_instance(inst);
  // Tasks 0 -> node 0 (provider 0), 1 -> node 2, 3 -> node 3 (provider 1);
  // task 2 stays unmatched. All matched tasks meet their deadlines.
  const auto m = spa::matching_from_assignment(problem, {0, 2, kFree, 3});

  const double expect_energy = cost_of(inst, 0, 0).energy_j +
                               cost_of(inst, 1, 2).energy_j +
                               cost_of(inst, 3, 3).energy_j;
  CHECK(metrics::total_offload_energy(inst, m) == near(expect_energy));

  const double expect_mean = (cost_of(inst, 0, 0).latency_s +
                              cost_of(inst, 1, 2).latency_s +
                              cost_of(inst, 3, 3).latency_s) /
                             3.0;
  CHECK(metrics::mean_offload_time(inst, m) == near(expect_mean));

  const auto outage = metrics::count_outages(inst, m);
  CHECK(outage.unmatched == 1);
  CHECK(outage.late == 0);
  CHECK(outage.outages == 1);

  // Billing: tariff ($/Mbps) * megabits / deadline per on-time task.
  // Provider 0 serves task 0: 60 * 0.3 / 20 = 0.9.
  // Provider 1 serves tasks 1 and 3: 90 * 0.4 / 25 + 90 * 0.6 / 15 = 5.04.
  const auto revenue = metrics::revenue(inst, m);
  REQUIRE(revenue.per_sp.size() == 2);
  CHECK(revenue.per_sp[0] == near(0.9));
  CHECK(revenue.per_sp[1] == near(5.04));
  CHECK(revenue.total_usd == near(5.94));

  const auto summary = metrics::summarize(inst, m);
  CHECK(summary.total_energy_j == near(expect_energy));
  CHECK(summary.mean_offload_time_s == near(expect_mean));
  CHECK(summary.matched == 3);
  CHECK(summary.on_time == 3);
  CHECK(summary.outage.outages == 1);
  CHECK(summary.outage_rate == near(0.25));
  CHECK(summary.revenue.total_usd == near(5.94));
}

TEST_CASE("a late task is an outage and generates no revenue") {
  // Same network as tiny_instance but task 0's deadline is impossible.
  std::vector<ServiceProvider> sps = {testutil::make_sp(0, 60.0, {0, 1}),
                                      testutil::make_sp(1, 90.0, {2, 3})};
  std::vector<FogNode> fns = {
      testutil::make_fn(0, 0, 0.0, 0.0, 2, 3e9), testutil::make_fn(1, 0, 10.0, 0.0, 1, 4e9),
      testutil::make_fn(2, 1, 20.0, 0.0, 2, 5e9), testutil::make_fn(3, 1, 30.0, 0.0, 1, 6e9)};
  std::vector<IoTDevice> devices = {
      testutil::make_device(0, 1.0, 1.0), testutil::make_device(1, 11.0, 1.0),
      testutil::make_device(2, 21.0, 1.0), testutil::make_device(3, 29.0, 1.0)};
  std::vector<Task> tasks = {
      testutil::make_task(0, 3e5, 2.1e8, 1e-3),  // cannot be served in time
      testutil::make_task(1, 4e5, 3.0e8, 25.0),
      testutil::make_task(2, 5e5, 4.0e8, 30.0),
      testutil::make_task(3, 6e5, 4.8e8, 15.0)};
  const Instance inst =
      scenario::materialize(sps, fns, devices, tasks, 1e-10, 1.0);
  const auto problem = spa::problem_from_instance(inst);
  const auto m = spa::matching_from_assignment(problem, {0, 1, 2, 3});
  REQUIRE(cost_of(inst, 0, 0).latency_s > 1e-3);

  const auto outage = metrics::count_outages(inst, m);
  CHECK(outage.unmatched == 0);
  CHECK(outage.late == 1);
  CHECK(outage.outages == 1);

  // Provider 0 only collects for task 1 (task 0 was served late):
  // 60 * 0.4 / 25 = 0.96. Provider 1 collects 90*0.5/30 + 90*0.6/15 = 5.1.
  const auto revenue = metrics::revenue(inst, m);
  CHECK(revenue.per_sp[0] == near(0.96));
  CHECK(revenue.per_sp[1] == near(5.1));

  const auto summary = metrics::summarize(inst, m);
  CHECK(summary.matched == 4);
  CHECK(summary.on_time == 3);
  // The late task still contributes its energy and latency.
  CHECK(summary.total_energy_j ==
        near(cost_of(inst, 0, 0).energy_j + cost_of(inst, 1, 1).energy_j +
             cost_of(inst, 2, 2).energy_j + cost_of(inst, 3, 3).energy_j));
}

TEST_CASE("an empty matching zeroes everything except outages") {
  const Instance inst = testutil::tiny_instance();
  const auto problem = spa::problem_from_instance(inst);
  const auto m = spa::matching_from_assignment(problem, {kFree, kFree, kFree, kFree});
  CHECK(metrics::total_offload_energy(inst, m) == 0.0);
  CHECK(metrics::mean_offload_time(inst, m) == 0.0);
  const auto summary = metrics::summarize(inst, m);
  CHECK(summary.matched == 0);
  CHECK(summary.outage.unmatched == 4);
  CHECK(summary.outage_rate == near(1.0));
  CHECK(summary.revenue.total_usd == 0.0);
  CHECK(summary.revenue.per_sp == std::vector<double>{0.0, 0.0});
}

TEST_CASE("metrics reject foreign or infeasible matchings") {
  const Instance inst = testutil::tiny_instance();

  SUBCASE("wrong shape") {
    spa::MatchingProblem other;
    other.num_tasks = 2;
    other.fn_sp = {0, 0};
    other.fn_quota = {1, 1};
    other.sp_capacity = {2};
    const auto m = spa::matching_from_assignment(other, {0, 1});
    CHECK_THROWS_AS(metrics::summarize(inst, m), std::invalid_argument);
  }
  SUBCASE("matched pair outside the feasible set") {
    // Shrink device 0's coverage so node 3 is unreachable, then force the
    // assignment anyway.
    std::vector<ServiceProvider> sps = {testutil::make_sp(0, 60.0, {0, 1}),
                                        testutil::make_sp(1, 90.0, {2, 3})};
    std::vector<FogNode> fns = {testutil::make_fn(0, 0, 0.0, 0.0, 2),
                                testutil::make_fn(1, 0, 10.0, 0.0, 1),
                                testutil::make_fn(2, 1, 20.0, 0.0, 2),
                                testutil::make_fn(3, 1, 30.0, 0.0, 1)};
    std::vector<IoTDevice> devices = {testutil::make_device(0, 1.0, 1.0, 12.0)};
    std::vector<Task> tasks = {testutil::make_task(0)};
    const Instance narrow =
        scenario::materialize(sps, fns, devices, tasks, 1e-10, 1.0);
    const auto problem = spa::problem_from_instance(narrow);
    const auto m = spa::matching_from_assignment(problem, {3});
    CHECK_THROWS_AS(metrics::total_offload_energy(narrow, m), std::invalid_argument);
  }
}
