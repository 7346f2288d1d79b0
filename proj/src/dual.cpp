#include "pancha/dual.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pancha/error.hpp"

namespace pancha {

namespace {

constexpr double kCrossCheckTolerance = 1e-10;

// Phase/visibility pair of cos(a/2) - i cos(theta) sin(a/2).
PhaseResult precession_overlap_law(double theta, double angle) {
  const double c = std::cos(theta);
  const double half = angle / 2.0;
  PhaseResult r;
  r.visibility = std::sqrt(std::max(0.0, 1.0 - std::pow(std::sin(theta), 2) * std::pow(std::sin(half), 2)));
  if (r.visibility < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates, "overlap vanishes (visibility " + std::to_string(r.visibility) + ")");
  }
  r.phase = arg(Complex(std::cos(half), -c * std::sin(half)));
  r.defined = true;
  return r;
}

void cross_check(const PhaseResult& law, Complex direct, const char* what) {
  const double dv = std::abs(std::abs(direct) - law.visibility);
  const double dp = std::abs(wrap_phase(arg(direct) - law.phase));
  if (dv > kCrossCheckTolerance || dp > kCrossCheckTolerance) {
    raise(ErrorCode::Internal, std::string(what) + " closed form disagrees with the state overlap");
  }
}

}  // namespace

std::pair<StateVector, StateVector> spin_arm_states(const SpinArmSpec& spec) {
  const double c = std::cos(spec.theta / 2.0);
  const double s = std::sin(spec.theta / 2.0);
  CVector a0(2);
  a0 << c, s;
  CVector af(2);
  af << std::polar(c, -spec.varphi / 2.0), std::polar(s, spec.varphi / 2.0);
  return {StateVector::normalized(a0), StateVector::normalized(af)};
}

PhaseResult spin_pancharatnam(const SpinArmSpec& spec) {
  const PhaseResult law = precession_overlap_law(spec.theta, spec.varphi);
  const auto [a0, af] = spin_arm_states(spec);
  cross_check(law, inner_product(a0, af), "spin phase");
  return law;
}

InterferenceProfile spin_interference_profile(const SpinArmSpec& spec, std::span<const double> chis) {
  const auto [a0, af] = spin_arm_states(spec);
  return pure_interference_profile(a0, af, chis);
}

StateVector prepare_beam_state(const DualSetupSpec& spec) {
  CVector v = CVector::Zero(4);
  v[0] = std::cos(spec.theta / 2.0);  // |0>|+z>
  v[2] = std::sin(spec.theta / 2.0);  // |1>|+z>
  return StateVector::normalized(std::move(v));
}

StateVector apply_arm_fields(const StateVector& psi, const DualSetupSpec& spec) {
  if (psi.dim() != 4) raise(ErrorCode::DimensionMismatch, "arm fields act on (beam x spin) states");
  const UnitaryOperator u0 = matrix_exponential_su2(Vec3::UnitX(), spec.varphi0);
  const UnitaryOperator u1 = matrix_exponential_su2(Vec3::UnitX(), spec.varphi1);
  CMatrix block = CMatrix::Zero(4, 4);
  block.topLeftCorner(2, 2) = u0.matrix();
  block.bottomRightCorner(2, 2) = u1.matrix();
  return UnitaryOperator(std::move(block)) * psi;
}

std::pair<StateVector, StateVector> spatial_states(double theta, double delta_phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double q = delta_phi / 4.0;
  CVector plus(2);
  plus << std::polar(c, -q), std::polar(s, q);
  CVector minus(2);
  minus << std::polar(c, q), std::polar(s, -q);
  return {StateVector::normalized(plus), StateVector::normalized(minus)};
}

StateVector dual_expansion(const DualSetupSpec& spec) {
  const auto [plus, minus] = spatial_states(spec.theta, spec.delta_phi());
  const Complex early = std::polar(1.0, -spec.chi() / 2.0);
  const Complex late = std::polar(1.0, spec.chi() / 2.0);
  const CVector up = 0.5 * (early * plus.amplitudes() + late * minus.amplitudes());
  const CVector down = 0.5 * (early * plus.amplitudes() - late * minus.amplitudes());
  CVector v(4);
  for (Eigen::Index beam = 0; beam < 2; ++beam) {
    v[2 * beam] = up[beam];
    v[2 * beam + 1] = down[beam];
  }
  return StateVector::normalized(std::move(v));
}

PhaseResult dual_phase_closed_form(const DualSetupSpec& spec) {
  const PhaseResult law = precession_overlap_law(spec.theta, spec.delta_phi());
  const auto [plus, minus] = spatial_states(spec.theta, spec.delta_phi());
  cross_check(law, inner_product(minus, plus), "dual phase");
  return law;
}

std::vector<FringeSample> dual_channel_intensities(const DualSweepSpec& spec,
                                                   std::span<const double> chis, bool plus_z) {
  const Eigen::Index spin = plus_z ? 0 : 1;
  std::vector<FringeSample> out;
  out.reserve(chis.size());
  for (double chi : chis) {
    const DualSetupSpec setup = spec.at(chi);
    const StateVector final_state = apply_arm_fields(prepare_beam_state(setup), setup);
    const CVector& amp = final_state.amplitudes();
    const double detections = std::norm(amp[spin]) + std::norm(amp[2 + spin]);
    out.push_back({chi, 4.0 * detections});
  }
  return out;
}

InterferenceProfile dual_coincidence_profile(const DualSweepSpec& spec, std::span<const double> chis) {
  InterferenceProfile out;
  out.samples = dual_channel_intensities(spec, chis, true);
  out.extracted = fit_fringe(out.samples);
  return out;
}

}  // namespace pancha
