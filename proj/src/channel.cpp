#include "sqsar/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqsar {

namespace {

constexpr double kHbar = 1.054571817e-34;  // J s

void validate(const ChannelParams& p) {
  if (!(p.eta > 0.0 && p.eta <= 1.0))
    throw std::invalid_argument("eta must be in (0, 1]");
  if (!(p.gain >= 1.0))
    throw std::invalid_argument("gain must be >= 1 (linear)");
  if (!(p.n_b >= 0.0)) throw std::invalid_argument("n_b must be >= 0");
  if (!(p.n_s >= 0.0)) throw std::invalid_argument("n_s must be >= 0");
  if (!(p.kappa_bar > 0.0 && p.kappa_bar <= 1.0))
    throw std::invalid_argument("kappa_bar must be in (0, 1]");
}

}  // namespace

SourceParams SourceParams::from_hz(double p_s_watts, double carrier_hz,
                                   double bandwidth_hz, double duration_s) {
  if (!(p_s_watts >= 0.0)) throw std::invalid_argument("source power must be >= 0");
  if (!(carrier_hz > 0.0 && bandwidth_hz > 0.0 && duration_s > 0.0))
    throw std::invalid_argument("carrier, bandwidth, duration must be positive");
  SourceParams s;
  s.p_s_watts = p_s_watts;
  s.omega = 2.0 * std::numbers::pi * carrier_hz;
  s.bandwidth_hz = bandwidth_hz;
  s.duration_s = duration_s;
  if (s.modes() < 1.0)
    throw std::invalid_argument("time-bandwidth product must be >= 1");
  return s;
}

TransducerSpec TransducerSpec::from_hz(double v_pi_volts, double p_in_watts,
                                       double impedance_ohms,
                                       double electrical_hz,
                                       double optical_hz) {
  if (!(v_pi_volts > 0.0 && p_in_watts > 0.0 && impedance_ohms > 0.0 &&
        electrical_hz > 0.0 && optical_hz > 0.0))
    throw std::invalid_argument("transducer parameters must be positive");
  TransducerSpec t;
  t.v_pi_volts = v_pi_volts;
  t.p_in_watts = p_in_watts;
  t.impedance_ohms = impedance_ohms;
  t.omega_e = 2.0 * std::numbers::pi * electrical_hz;
  t.omega_o = 2.0 * std::numbers::pi * optical_hz;
  return t;
}

ChannelParams ChannelParams::from_source(double eta, double gain, double n_b,
                                         double n_s, double kappa_bar) {
  ChannelParams p;
  p.eta = eta;
  p.gain = gain;
  p.n_b = n_b;
  p.n_s = n_s;
  p.kappa_bar = kappa_bar;
  validate(p);
  p.n_p_prime = eta * kappa_bar * n_s;
  p.n_b_prime = eta * n_b;
  return p;
}

ChannelParams ChannelParams::from_detected(double n_p_prime, double n_b_prime,
                                           double eta, double gain,
                                           double kappa_bar) {
  if (!(n_p_prime >= 0.0 && n_b_prime >= 0.0))
    throw std::invalid_argument("detected photon numbers must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta must be in (0, 1]");
  ChannelParams p;
  p.eta = eta;
  p.gain = gain;
  p.n_b = n_b_prime / eta;
  p.n_s = n_p_prime / (eta * kappa_bar);
  p.kappa_bar = kappa_bar;
  validate(p);
  p.n_p_prime = n_p_prime;
  p.n_b_prime = n_b_prime;
  return p;
}

double source_photons(const SourceParams& s) {
  if (!(s.omega > 0.0 && s.bandwidth_hz > 0.0))
    throw std::invalid_argument("carrier and bandwidth must be positive");
  if (!(s.p_s_watts >= 0.0))
    throw std::invalid_argument("source power must be >= 0");
  return s.p_s_watts / (kHbar * s.omega * s.bandwidth_hz);
}

double transduction_efficiency(const TransducerSpec& t) {
  if (!(t.v_pi_volts > 0.0 && t.p_in_watts > 0.0 && t.impedance_ohms > 0.0 &&
        t.omega_e > 0.0 && t.omega_o > 0.0))
    throw std::invalid_argument("transducer parameters must be positive");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double eta = pi2 / (4.0 * t.v_pi_volts * t.v_pi_volts) *
               (t.omega_e / t.omega_o) * t.impedance_ohms * t.p_in_watts;
  if (eta >= 1.0)
    throw std::domain_error(
        "transduction efficiency >= 1 is beyond the beamsplitter model");
  return eta;
}

double readout_variance(const ChannelParams& p) {
  validate(p);
  return ((1.0 - p.eta) / p.gain + 2.0 * p.eta * p.n_b) / 4.0;
}

double snr(const ChannelParams& p) {
  validate(p);
  double denom = (1.0 - p.eta) / p.gain + 2.0 * p.eta * p.n_b;
  if (denom == 0.0)
    throw std::domain_error("noiseless channel has unbounded snr");
  return 4.0 * p.eta * p.kappa_bar * p.n_s / denom;
}

double equivalent_quantum_limited_gain(double gain_d, double n_b_prime) {
  if (!(gain_d >= 1.0)) throw std::invalid_argument("gain must be >= 1");
  if (!(n_b_prime >= 0.0)) throw std::invalid_argument("n_b_prime must be >= 0");
  return 1.0 / (1.0 / gain_d + 2.0 * n_b_prime);
}

double penetration_loss_db(const LossModel& l) {
  if (!(l.alpha_per_m >= 0.0 && l.z_m >= 0.0))
    throw std::invalid_argument("loss model fields must be >= 0");
  return 10.0 * l.alpha_per_m * l.z_m * std::numbers::log10e;
}

double kappa_from_loss_db(double loss_db) {
  if (!(loss_db >= 0.0)) throw std::invalid_argument("loss must be >= 0 dB");
  return std::pow(10.0, -loss_db / 10.0);
}

}  // namespace sqsar
