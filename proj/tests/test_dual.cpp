#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pancha/dual.hpp"
#include "support.hpp"

using namespace pancha;

namespace {

double tilt_law_phase(double theta, double angle) { return -std::atan(std::cos(theta) * std::tan(angle / 2)); }

double tilt_law_visibility(double theta, double angle) {
  const double s = std::sin(theta) * std::sin(angle / 2);
  return std::sqrt(1 - s * s);
}

}  // namespace

TEST_CASE("spin arm examples") {
  CHECK(code_of([] { spin_pancharatnam({kPi / 2, kPi}); }) == ErrorCode::OrthogonalStates);
  const PhaseResult eq = spin_pancharatnam({kPi / 2, kPi / 2});
  CHECK(std::abs(eq.phase) < 1e-15);
  CHECK(eq.visibility == doctest::Approx(0.7071067811865476));
  const PhaseResult polar = spin_pancharatnam({0.0, 1.2});
  CHECK(polar.phase == doctest::Approx(-0.6));
  CHECK(polar.visibility == doctest::Approx(1.0));
}

TEST_CASE("spin arm phase follows the tilt law, with the quadrant kept past a half turn") {
  for (double theta : {0.2, 1.0, 2.0, 3.0}) {
    for (double phi : {-2.5, -0.7, 0.4, 1.9}) {
      const PhaseResult r = spin_pancharatnam({theta, phi});
      CHECK(r.phase == doctest::Approx(tilt_law_phase(theta, phi)).epsilon(1e-12));
      CHECK(r.visibility == doctest::Approx(tilt_law_visibility(theta, phi)).epsilon(1e-12));
      // by hand: <+z| e^{-i phi n.sigma / 2} |+z> with n = (sin theta, 0, cos theta)
      const oracle::Spinor up{1.0, 0.0};
      const oracle::cd z = oracle::braket(up, oracle::rotate({std::sin(theta), 0, std::cos(theta)}, phi, up));
      CHECK(oracle::phase_gap(r.phase, std::arg(z)) < 1e-12);
    }
  }
  const PhaseResult wide = spin_pancharatnam({0.0, 3.0});
  CHECK(wide.phase == doctest::Approx(-1.5));
  const PhaseResult wider = spin_pancharatnam({0.0, 4.0});
  CHECK(wider.phase == doctest::Approx(-2.0));
}

TEST_CASE("spin interference profile") {
  const auto chis = uniform_chis(64);
  const auto none = spin_interference_profile({0.7, 0.0}, chis);
  for (const auto& s : none.samples) CHECK(s.intensity == doctest::Approx(2 + 2 * std::cos(s.chi)));
  const auto flat = spin_interference_profile({kPi / 2, kPi}, chis);
  for (const auto& s : flat.samples) CHECK(s.intensity == doctest::Approx(2.0));
  CHECK_FALSE(flat.extracted.defined);
  CHECK(spin_interference_profile({kPi / 3, kPi / 2}, chis).extracted.phase ==
        doctest::Approx(-0.4636476090008061).epsilon(1e-10));
}

TEST_CASE("beam preparation") {
  const StateVector t = prepare_beam_state({0.0, 0.0, 0.0});
  CHECK(std::abs(t[0] - Complex(1.0)) < 1e-15);
  const StateVector r = prepare_beam_state({kPi, 0.0, 0.0});
  CHECK(std::abs(r[2] - Complex(1.0)) < 1e-15);
  const StateVector h = prepare_beam_state({kPi / 2, 0.0, 0.0});
  CHECK(h[0].real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(h[2].real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(h[1]) + std::abs(h[3]) < 1e-15);
}

TEST_CASE("arm fields") {
  Rng rng(51);
  const StateVector psi = rng.state(4);
  CHECK((apply_arm_fields(psi, {0.4, 0.0, 0.0}).amplitudes() - psi.amplitudes()).norm() < 1e-15);

  const DualSetupSpec same{0.9, 0.8, 0.8};
  const StateVector out = apply_arm_fields(prepare_beam_state(same), same);
  const oracle::Spinor spin = oracle::rotate({1, 0, 0}, 0.8, {1.0, 0.0});
  CHECK(std::abs(out[0] - std::cos(0.45) * spin[0]) < 1e-14);
  CHECK(std::abs(out[1] - std::cos(0.45) * spin[1]) < 1e-14);
  CHECK(std::abs(out[2] - std::sin(0.45) * spin[0]) < 1e-14);
  CHECK(std::abs(out[3] - std::sin(0.45) * spin[1]) < 1e-14);

  CHECK(code_of([] { apply_arm_fields(StateVector::basis(2, 0), {0.3, 0.1, 0.2}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("expansion in spatial states matches direct application") {
  const DualSetupSpec spec{kPi / 3, kPi / 2, 0.0};
  const StateVector direct = apply_arm_fields(prepare_beam_state(spec), spec);
  CHECK((direct.amplitudes() - dual_expansion(spec).amplitudes()).norm() < 1e-12);
  const auto [plus, minus] = spatial_states(spec.theta, spec.delta_phi());
  const Complex z = inner_product(minus, plus);
  CHECK(std::arg(z) == doctest::Approx(-0.4636476090008061));
  CHECK(std::abs(z) == doctest::Approx(0.7905694150420949));
}

TEST_CASE("dual closed form") {
  const PhaseResult none = dual_phase_closed_form({0.8, 0.3, 0.3});
  CHECK(std::abs(none.phase) < 1e-15);
  CHECK(none.visibility == doctest::Approx(1.0));
  const PhaseResult r = dual_phase_closed_form({kPi / 3, kPi / 2, 0.0});
  CHECK(r.phase == doctest::Approx(-0.4636476090008061));
  CHECK(r.visibility == doctest::Approx(0.7905694150420949));
  CHECK(code_of([] { dual_phase_closed_form({kPi / 2, kPi, 0.0}); }) == ErrorCode::OrthogonalStates);
  // depends only on the field difference
  const PhaseResult shifted = dual_phase_closed_form({kPi / 3, kPi / 2 + 0.9, 0.9});
  CHECK(shifted.phase == doctest::Approx(r.phase));
}

TEST_CASE("dual coincidence profile") {
  const auto chis = uniform_chis(64);
  const auto none = dual_coincidence_profile({1.1, 0.0}, chis);
  for (const auto& s : none.samples) CHECK(s.intensity == doctest::Approx(2 + 2 * std::cos(s.chi)));
  const auto flat = dual_coincidence_profile({kPi / 2, kPi}, chis);
  for (const auto& s : flat.samples) CHECK(s.intensity == doctest::Approx(2.0));

  const auto p = dual_coincidence_profile({kPi / 3, kPi / 2}, chis);
  CHECK(p.extracted.phase == doctest::Approx(-0.4636476090008061).epsilon(1e-10));
  CHECK(p.extracted.visibility == doctest::Approx(0.7905694150420949).epsilon(1e-10));
  std::vector<double> ys;
  for (const auto& s : p.samples) ys.push_back(s.intensity);
  const auto [phase, vis] = oracle::harmonic_fit(chis, ys);
  CHECK(phase == doctest::Approx(-0.4636476090008061).epsilon(1e-10));
  CHECK(vis == doctest::Approx(0.7905694150420949).epsilon(1e-10));

  const auto minus = dual_channel_intensities({kPi / 3, kPi / 2}, chis, false);
  for (std::size_t i = 0; i < chis.size(); ++i) {
    CHECK(p.samples[i].intensity + minus[i].intensity == doctest::Approx(4.0));
  }
}
