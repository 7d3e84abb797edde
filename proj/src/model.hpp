// Physical-layer cost model: path loss, Shannon uplink, latency and energy.
#ifndef SPATO_MODEL_HPP_
#define SPATO_MODEL_HPP_

namespace spato::model {

// Urban-cell path loss in dB at distance_m meters. Throws std::domain_error
// for non-positive distances.
double path_loss(double distance_m);

// Linear channel gain h from a path loss in dB.
double channel_gain(double path_loss_db);

// Shannon uplink rate in bit/s over one SP subchannel. A zero gain yields a
// zero rate; the caller treats such pairs as infeasible.
double uplink_rate(double subchannel_hz, double tx_power_w, double gain,
                   double noise_power_w);

// Upload duration of size_bits at uplink_bps; +infinity when the rate is
// non-positive so the pair can never look attractive.
double transmission_time(double size_bits, double uplink_bps);

// Execution duration of cycles on one VRU running at vru_rate_hz.
double execution_time(double cycles, double vru_rate_hz);

double total_latency(double transmission_s, double execution_s);

// Device-side radio energy spent while uploading.
double transmission_energy(double tx_power_w, double transmission_s);

// FN-side energy spent while executing.
double execution_energy(double execution_s, double compute_power_w);

double total_energy(double transmission_j, double execution_j);

// Weighted score over pre-normalized latency and energy; lower is better.
double utility_score(double latency_norm, double energy_norm,
                     double latency_weight, double energy_weight);

}  // namespace spato::model

#endif  // SPATO_MODEL_HPP_
