#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "model.hpp"

using namespace spato;

namespace {
doctest::Approx rel(double expected, double tol = 1e-9) {
  return doctest::Approx(expected).epsilon(tol);
}
}  // namespace

TEST_CASE("path loss matches the 38.02 + 20 log10(d) law") {
  CHECK(model::path_loss(100.0) == rel(78.02));
  CHECK(model::path_loss(1.0) == rel(38.02));
  CHECK(model::path_loss(10.0) == rel(58.02));
  CHECK_THROWS_AS(model::path_loss(0.0), std::domain_error);
  CHECK_THROWS_AS(model::path_loss(-3.0), std::domain_error);
}

TEST_CASE("channel gain inverts path loss in linear scale") {
  // Frozen: 10^(-78.02/10) and 10^(-38.02/10) evaluated independently.
  CHECK(model::channel_gain(78.02) == rel(1.5776112696993486e-08));
  CHECK(model::channel_gain(38.02) == rel(1.5776112696993486e-04));
  CHECK(model::channel_gain(0.0) == 1.0);
}

TEST_CASE("gain through path loss falls monotonically with distance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.5, 400.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a = dist(rng), b = dist(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    CHECK(model::channel_gain(model::path_loss(a)) >
          model::channel_gain(model::path_loss(b)));
  }
}

TEST_CASE("uplink rate follows the Shannon form") {
  // SNR = 0.5 * 2e-10 / 1e-10 = 1, so rate = W * log2(2) = W.
  CHECK(model::uplink_rate(1e6, 0.5, 2e-10, 1e-10) == rel(1e6));
  // Frozen: 22857 * log2(1 + 0.5 * 1.577e-8 / 1e-10).
  CHECK(model::uplink_rate(22857.0, 0.5, 1.577e-8, 1e-10) ==
        rel(144438.4230261881));
  CHECK(model::uplink_rate(1e6, 0.5, 0.0, 1e-10) == 0.0);
  CHECK_THROWS_AS(model::uplink_rate(0.0, 0.5, 1e-8, 1e-10),
                  std::domain_error);
  CHECK_THROWS_AS(model::uplink_rate(1e6, 0.5, 1e-8, 0.0), std::domain_error);
}

TEST_CASE("uplink rate grows with gain and with subchannel width") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gain(1e-9, 1e-6);
  std::uniform_real_distribution<double> width(1e4, 1e7);
  for (int trial = 0; trial < 200; ++trial) {
    double g = gain(rng), w = width(rng);
    CHECK(model::uplink_rate(w, 0.5, g * 2.0, 1e-10) >
          model::uplink_rate(w, 0.5, g, 1e-10));
    CHECK(model::uplink_rate(w * 2.0, 0.5, g, 1e-10) >
          model::uplink_rate(w, 0.5, g, 1e-10));
  }
}

TEST_CASE("transmission time is size over rate") {
  CHECK(model::transmission_time(5e5, 1.444e5) == rel(3.4626038781163433));
  CHECK(model::transmission_time(3e5, 1e6) == rel(0.3));
  CHECK(std::isinf(model::transmission_time(1.0, 0.0)));
  CHECK_THROWS_AS(model::transmission_time(0.0, 1e6), std::domain_error);
}

TEST_CASE("transmission time scales exactly with size and inversely with rate") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> size(1e3, 1e7);
  std::uniform_real_distribution<double> rate(1e3, 1e7);
  for (int trial = 0; trial < 200; ++trial) {
    double i = size(rng), r = rate(rng);
    CHECK(model::transmission_time(2.0 * i, r) ==
          2.0 * model::transmission_time(i, r));
    CHECK(model::transmission_time(i, 2.0 * r) <
          model::transmission_time(i, r));
  }
}

TEST_CASE("execution time is cycles over VRU rate") {
  CHECK(model::execution_time(3e8, 5.33e7) == rel(5.628517823639775));
  CHECK(model::execution_time(4.8e8, 2e7) == rel(24.0));
  CHECK_THROWS_AS(model::execution_time(1e8, 0.0), std::domain_error);
  CHECK_THROWS_AS(model::execution_time(0.0, 1e7), std::domain_error);
}

TEST_CASE("latency and energy totals are plain sums and products") {
  CHECK(model::total_latency(3.463, 5.63) == rel(9.093));
  CHECK(model::transmission_energy(0.5, 3.463) == rel(1.7315));
  CHECK(model::execution_energy(5.63, 0.45) == rel(2.5335));
  CHECK(model::total_energy(1.7315, 2.5335) == rel(4.265));

  // Receiving phase is exactly zero: totals are the two components, nothing
  // else, and doubling the upload doubles its energy bit-for-bit.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(0.01, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    double tt = dist(rng), et = dist(rng), p = dist(rng);
    CHECK(model::total_latency(tt, et) == tt + et);
    CHECK(model::total_energy(tt, et) == tt + et);
    CHECK(model::transmission_energy(p, 2.0 * tt) ==
          2.0 * model::transmission_energy(p, tt));
  }
}

TEST_CASE("utility score is the weighted sum of normalized costs") {
  CHECK(model::utility_score(0.4, 0.8, 0.75, 0.25) == rel(0.5));
  CHECK(model::utility_score(1.0, 1.0, 0.6, 0.4) == rel(1.0));
  // Degenerate weight puts all mass on one criterion.
  CHECK(model::utility_score(0.3, 0.9, 1.0, 0.0) == rel(0.3));
  CHECK(model::utility_score(0.3, 0.9, 0.0, 1.0) == rel(0.9));
}
