#include "model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spato::model {

double path_loss(double distance_m) {
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path_loss: distance must be positive");
  }
  return 38.02 + 20.0 * std::log10(distance_m);
}

double channel_gain(double path_loss_db) {
  return std::pow(10.0, -path_loss_db / 10.0);
}

double uplink_rate(double subchannel_hz, double tx_power_w, double gain,
                   double noise_power_w) {
  if (!(subchannel_hz > 0.0) || !(tx_power_w > 0.0) || !(noise_power_w > 0.0) ||
      gain < 0.0) {
    throw std::domain_error("uplink_rate: non-positive input");
  }
  return subchannel_hz * std::log2(1.0 + tx_power_w * gain / noise_power_w);
}

double transmission_time(double size_bits, double uplink_bps) {
  if (!(size_bits > 0.0)) {
    throw std::domain_error("transmission_time: size must be positive");
  }
  if (!(uplink_bps > 0.0)) return std::numeric_limits<double>::infinity();
  return size_bits / uplink_bps;
}

double execution_time(double cycles, double vru_rate_hz) {
  if (!(cycles > 0.0) || !(vru_rate_hz > 0.0)) {
    throw std::domain_error("execution_time: non-positive input");
  }
  return cycles / vru_rate_hz;
}

double total_latency(double transmission_s, double execution_s) {
  return transmission_s + execution_s;
}

double transmission_energy(double tx_power_w, double transmission_s) {
  return tx_power_w * transmission_s;
}

double execution_energy(double execution_s, double compute_power_w) {
  return execution_s * compute_power_w;
}

double total_energy(double transmission_j, double execution_j) {
  return transmission_j + execution_j;
}

double utility_score(double latency_norm, double energy_norm,
                     double latency_weight, double energy_weight) {
  return latency_weight * latency_norm + energy_weight * energy_norm;
}

}  // namespace spato::model
