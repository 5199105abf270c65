#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "sqsar/channel.hpp"

using namespace sqsar;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("source photon number per mode") {
  // 3 mW at a 100 kHz carrier with 50 kHz resolution bandwidth. The carrier
  // enters in Hz and is converted to rad/s, so n_s = P / (hbar 2pi f B).
  SourceParams s = SourceParams::from_hz(3e-3, 1e5, 5e4);
  double expect = 3e-3 / (1.054571817e-34 * 2.0 * std::numbers::pi * 1e5 * 5e4);
  CHECK(source_photons(s) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(source_photons(s) > 1e20);
  CHECK(source_photons(s) < 1e22);

  SourceParams wide = SourceParams::from_hz(3e-3, 1e5, 1e5);
  CHECK(source_photons(s) / source_photons(wide) ==
        doctest::Approx(2.0).epsilon(1e-15));

  SourceParams dark = SourceParams::from_hz(0.0, 1e5, 5e4);
  CHECK(source_photons(dark) == 0.0);

  CHECK(s.modes() == doctest::Approx(5e4).epsilon(1e-15));
  CHECK_THROWS_AS(SourceParams::from_hz(1.0, 1e5, 0.5, 1.0),
                  std::invalid_argument);  // time-bandwidth below one mode
  CHECK_THROWS_AS(SourceParams::from_hz(1.0, 0.0, 1e4),
                  std::invalid_argument);
}

TEST_CASE("transduction efficiency of the electro-optic front end") {
  // 1 V half-wave voltage, 100 mW pump, 50 ohm, 100 kHz RF on a 192 THz
  // optical carrier. The rad/s conversion cancels inside the ratio.
  TransducerSpec t = TransducerSpec::from_hz(1.0, 0.1, 50.0, 1e5, 1.92e14);
  double expect = std::numbers::pi * std::numbers::pi / 4.0 *
                  (1e5 / 1.92e14) * 50.0 * 0.1;
  double eta = transduction_efficiency(t);
  CHECK(eta == doctest::Approx(expect).epsilon(1e-12));
  CHECK(eta == doctest::Approx(6.425523698625885e-9).epsilon(1e-12));
  CHECK(eta / 1e-9 > 1.0);
  CHECK(eta / 1e-9 < 10.0);

  // Strong coupling pushes the beamsplitter picture past unity.
  CHECK_THROWS_WITH(
      transduction_efficiency(TransducerSpec::from_hz(1e-6, 0.1, 50.0, 1e5,
                                                      1.92e14)),
      "transduction efficiency >= 1 is beyond the beamsplitter model");
  CHECK_THROWS_AS(transduction_efficiency(TransducerSpec{}),
                  std::invalid_argument);
}

TEST_CASE("homodyne readout variance") {
  // Squeezing gain 10 (linear), leaked background 0.1: (0.1 + 0.2)/4.
  ChannelParams p = ChannelParams::from_detected(100.0, 0.1, 1e-12, 10.0, 0.5);
  CHECK(readout_variance(p) == doctest::Approx(0.075).epsilon(1e-12));

  // Vacuum limit 1/4 with no squeezing and no background.
  ChannelParams sql = ChannelParams::from_detected(100.0, 0.0, 1e-12, 1.0, 0.5);
  CHECK(readout_variance(sql) == doctest::Approx(0.25).epsilon(1e-10));

  // Mid-range hand value: eta 0.5, gain 2, n_b 0.3 -> (0.25 + 0.3)/4.
  ChannelParams mid = ChannelParams::from_source(0.5, 2.0, 0.3, 10.0, 0.5);
  CHECK(readout_variance(mid) == doctest::Approx(0.1375).epsilon(1e-15));

  // Squeezing only shrinks the vacuum part: variance decreases in gain.
  ChannelParams g1 = ChannelParams::from_detected(100.0, 0.1, 1e-9, 1.0, 0.5);
  ChannelParams g2 = ChannelParams::from_detected(100.0, 0.1, 1e-9, 4.0, 0.5);
  CHECK(readout_variance(g2) < readout_variance(g1));
  CHECK(readout_variance(g2) > 2.0 * 0.1 / 4.0);
}

TEST_CASE("snr saturates at the background ceiling") {
  auto at_gain = [](double gain) {
    return snr(ChannelParams::from_detected(100.0, 0.1, 1e-9, gain, 0.5));
  };
  // Unsqueezed value and the large-gain ceiling 4*100/0.2.
  CHECK(at_gain(1.0) ==
        doctest::Approx(400.0 / (1.0 - 1e-9 + 0.2)).epsilon(1e-10));
  CHECK(at_gain(1e16) == doctest::Approx(2000.0).epsilon(1e-10));
  // Halfway point at gain = 1/(2 n_b'), and 98% of the ceiling by gain 500.
  CHECK(at_gain(5.0) == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(at_gain(500.0) == doctest::Approx(400.0 / 0.202).epsilon(1e-10));
  CHECK(std::abs(at_gain(500.0) - 2000.0) / 2000.0 < 0.02);

  // Quantum-limited case: no background leaves only the squeezed vacuum.
  ChannelParams ql = ChannelParams::from_detected(100.0, 0.0, 1e-9, 1.0, 0.5);
  CHECK(snr(ql) == doctest::Approx(400.0 / (1.0 - 1e-9)).epsilon(1e-12));
}

TEST_CASE("equivalent quantum-limited gain") {
  CHECK(equivalent_quantum_limited_gain(kInf, 0.1) == 5.0);
  CHECK(equivalent_quantum_limited_gain(2.5, 0.1) ==
        doctest::Approx(1.0 / 0.6).epsilon(1e-15));
  CHECK(equivalent_quantum_limited_gain(2.0, 0.1) ==
        doctest::Approx(1.0 / 0.7).epsilon(1e-15));
  CHECK(equivalent_quantum_limited_gain(5.0, 0.1) ==
        doctest::Approx(2.5).epsilon(1e-15));
  CHECK(equivalent_quantum_limited_gain(20.0, 0.1) ==
        doctest::Approx(4.0).epsilon(1e-15));
  // No background: the detected gain passes straight through.
  CHECK(equivalent_quantum_limited_gain(7.0, 0.0) ==
        doctest::Approx(7.0).epsilon(1e-15));
  CHECK_THROWS_AS(equivalent_quantum_limited_gain(0.5, 0.1),
                  std::invalid_argument);
}

TEST_CASE("penetration loss bookkeeping") {
  // alpha z = 1 -> -10 log10(e^-1) = 10 log10(e).
  CHECK(penetration_loss_db({1.0, 1.0}) ==
        doctest::Approx(4.342944819032518).epsilon(1e-15));
  CHECK(penetration_loss_db({0.5, 4.0}) ==
        doctest::Approx(2.0 * 4.342944819032518).epsilon(1e-15));
  CHECK(penetration_loss_db({0.0, 5.0}) == 0.0);

  CHECK(kappa_from_loss_db(0.0) == 1.0);
  CHECK(kappa_from_loss_db(3.0) ==
        doctest::Approx(0.5011872336272722).epsilon(1e-15));
  CHECK(kappa_from_loss_db(100.0) == doctest::Approx(1e-10).epsilon(1e-15));

  // Round trip: dB of alpha z = 1 recovers e^-1.
  CHECK(kappa_from_loss_db(penetration_loss_db({1.0, 1.0})) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(kappa_from_loss_db(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(penetration_loss_db({-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("channel parameter plumbing and validation") {
  ChannelParams p = ChannelParams::from_source(1e-9, 10.0, 1e8, 1e21, 0.5);
  CHECK(p.n_p_prime == doctest::Approx(0.5 * 1e12).epsilon(1e-15));
  CHECK(p.n_b_prime == doctest::Approx(0.1).epsilon(1e-15));

  ChannelParams q = ChannelParams::from_detected(100.0, 0.1, 1e-9, 10.0, 0.5);
  CHECK(q.n_s == doctest::Approx(100.0 / (1e-9 * 0.5)).epsilon(1e-15));
  CHECK(q.n_b == doctest::Approx(1e8).epsilon(1e-15));

  // The two routes agree when fed each other's outputs.
  ChannelParams back =
      ChannelParams::from_source(q.eta, q.gain, q.n_b, q.n_s, q.kappa_bar);
  CHECK(back.n_p_prime == doctest::Approx(q.n_p_prime).epsilon(1e-12));
  CHECK(back.n_b_prime == doctest::Approx(q.n_b_prime).epsilon(1e-12));

  CHECK_THROWS_AS(ChannelParams::from_source(0.0, 1.0, 0.0, 1.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams::from_source(1e-9, 0.5, 0.0, 1.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams::from_source(1e-9, 1.0, 0.0, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams::from_detected(-1.0, 0.0, 1e-9, 1.0, 0.5),
                  std::invalid_argument);
}
