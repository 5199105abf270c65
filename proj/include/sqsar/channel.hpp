#pragma once

#include <cstdint>

namespace sqsar {

// Microwave source: power, carrier given in Hz at the interface and held in
// rad/s internally, resolution bandwidth, dwell time.
struct SourceParams {
  double p_s_watts = 0.0;
  double omega = 0.0;  // rad/s
  double bandwidth_hz = 0.0;
  double duration_s = 1.0;

  static SourceParams from_hz(double p_s_watts, double carrier_hz,
                              double bandwidth_hz, double duration_s = 1.0);
  double modes() const { return bandwidth_hz * duration_s; }
};

// Electro-optic receiver treated as a beamsplitter of transmissivity eta.
struct TransducerSpec {
  double v_pi_volts = 0.0;
  double p_in_watts = 0.0;
  double impedance_ohms = 0.0;
  double omega_e = 0.0;  // rad/s
  double omega_o = 0.0;  // rad/s

  static TransducerSpec from_hz(double v_pi_volts, double p_in_watts,
                                double impedance_ohms, double electrical_hz,
                                double optical_hz);
};

// Everything the detection model needs per pixel. gain is linear (>= 1);
// n_p_prime = eta * kappa_bar * n_s and n_b_prime = eta * n_b are stored
// alongside so both construction routes agree.
struct ChannelParams {
  double eta = 0.0;
  double gain = 1.0;
  double n_b = 0.0;
  double n_s = 0.0;
  double kappa_bar = 0.0;
  double n_p_prime = 0.0;
  double n_b_prime = 0.0;

  // Physical route: source photons and background given at the antenna.
  static ChannelParams from_source(double eta, double gain, double n_b,
                                   double n_s, double kappa_bar);
  // Calibrated route: detected photon number and leaked background given
  // directly, as the grid presets do; back-derives n_s and n_b.
  static ChannelParams from_detected(double n_p_prime, double n_b_prime,
                                     double eta, double gain,
                                     double kappa_bar);
};

// Mean photon number per mode, P_S / (hbar omega B).
double source_photons(const SourceParams& s);

// Power transmissivity (pi^2 / 4 V_pi^2) (omega_e / omega_o) Z P_in.
// Values >= 1 are outside the beamsplitter model and throw.
double transduction_efficiency(const TransducerSpec& t);

// Homodyne readout variance [(1 - eta)/G + 2 eta N_B] / 4.
double readout_variance(const ChannelParams& p);

// Post-transduction SNR 4 eta kappa_bar n_S / [(1 - eta)/G + 2 eta N_B].
double snr(const ChannelParams& p);

// Distributed-gain setting whose quantum-limited variance matches a direct
// gain G_d against leaked background: G_c = 1 / (1/G_d + 2 N_B').
double equivalent_quantum_limited_gain(double gain_d, double n_b_prime);

// Beer-Lambert attenuation over range z expressed in dB.
struct LossModel {
  double alpha_per_m = 0.0;
  double z_m = 0.0;
};
double penetration_loss_db(const LossModel& l);

// Mean transmissivity for a dB loss figure, 10^(-loss/10); the sweep-axis
// inverse of penetration_loss_db.
double kappa_from_loss_db(double loss_db);

}  // namespace sqsar
