#pragma once

// Spin Pancharatnam phase in a two-beam interferometer and its spatial dual,
// where two beams of a split +z-polarised particle precess by different
// Larmor angles about x and per-beam spin analysers read the beam-pair phase.
//
// Four-dimensional states use (beam (x) spin) order: index = 2 beam + spin,
// beam 0/1 as labelled at the splitter and spin 0/1 = |+z>/|-z>.
//
// Arctan laws take their quadrant from cos(phi/2), matching the argument of
// the overlap cos(phi/2) - i cos(theta) sin(phi/2) for every phi.

#include <span>
#include <utility>

#include "pancha/phase.hpp"

namespace pancha {

struct SpinArmSpec {
  double theta = 0.0;   // spin tilt from +z
  double varphi = 0.0;  // precession angle about z
};

struct DualSetupSpec {
  double theta = 0.0;    // sqrt(T) = cos(theta/2)
  double varphi0 = 0.0;  // Larmor angle in beam 0
  double varphi1 = 0.0;  // Larmor angle in beam 1

  double delta_phi() const { return varphi0 - varphi1; }
  double chi() const { return (varphi0 + varphi1) / 2.0; }
};

// Field-difference family swept over chi: varphi0 = chi + delta/2,
// varphi1 = chi - delta/2.
struct DualSweepSpec {
  double theta = 0.0;
  double delta_phi = 0.0;

  DualSetupSpec at(double chi) const {
    return {theta, chi + delta_phi / 2.0, chi - delta_phi / 2.0};
  }
};

// |A0> = cos(theta/2)|+z> + sin(theta/2)|-z> and its precessed image.
std::pair<StateVector, StateVector> spin_arm_states(const SpinArmSpec& spec);

// -arctan(cos theta tan(phi/2)) and sqrt(1 - sin^2 theta sin^2(phi/2)),
// cross-checked against <A0|Af> (throws Internal on disagreement beyond 1e-10).
// Throws OrthogonalStates below visibility 1e-9.
PhaseResult spin_pancharatnam(const SpinArmSpec& spec);

InterferenceProfile spin_interference_profile(const SpinArmSpec& spec, std::span<const double> chis);

// [cos(theta/2)|0> + sin(theta/2)|1>] (x) |+z>
StateVector prepare_beam_state(const DualSetupSpec& spec);

// |0><0| (x) exp(-i varphi0 sigma_x/2) + |1><1| (x) exp(-i varphi1 sigma_x/2)
StateVector apply_arm_fields(const StateVector& psi, const DualSetupSpec& spec);

// Spatial vectors |A+>, |A-> built from theta and delta_phi.
std::pair<StateVector, StateVector> spatial_states(double theta, double delta_phi);

// The final total state assembled from |A+-> and chi:
// 1/2[e^{-i chi/2}A+ + e^{i chi/2}A-]|+z> + 1/2[e^{-i chi/2}A+ - e^{i chi/2}A-]|-z>.
StateVector dual_expansion(const DualSetupSpec& spec);

// arg <A-|A+> and |<A-|A+>| in closed form, cross-checked against the direct
// two-dimensional inner product. Throws OrthogonalStates below 1e-9.
PhaseResult dual_phase_closed_form(const DualSetupSpec& spec);

// Summed +z (or -z) detection probability of the two spin analysers for each
// chi, scaled by 4 so a full-contrast fringe reads 2 + 2 cos(chi - phase).
std::vector<FringeSample> dual_channel_intensities(const DualSweepSpec& spec,
                                                   std::span<const double> chis, bool plus_z);

InterferenceProfile dual_coincidence_profile(const DualSweepSpec& spec, std::span<const double> chis);

}  // namespace pancha
