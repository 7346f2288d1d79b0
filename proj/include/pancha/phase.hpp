#pragma once

// Pancharatnam relative phase between pure states, its mixed-state
// counterpart arg Tr(U rho), two-beam interference profiles and a
// least-squares fringe readout.

#include <span>
#include <vector>

#include "pancha/core.hpp"

namespace pancha {

struct PhaseResult {
  double phase = 0.0;       // (-pi, pi]; meaningless unless `defined`
  double visibility = 0.0;  // [0, 1]
  bool defined = false;
};

struct FringeSample {
  double chi = 0.0;
  double intensity = 0.0;
};

// Intensity samples of |e^{i chi} a + b|^2 together with the (phase,
// visibility) pair read off them by fit_fringe.
struct InterferenceProfile {
  std::vector<FringeSample> samples;
  PhaseResult extracted;
};

// arg <a|b> and |<a|b>|. Throws OrthogonalStates when |<a|b>| < 1e-9.
PhaseResult pancharatnam_phase(const StateVector& a, const StateVector& b);

// Samples |e^{i chi} a + b|^2 by direct vector arithmetic.
InterferenceProfile pure_interference_profile(const StateVector& a, const StateVector& b,
                                              std::span<const double> chis);

// arg Tr(U rho) and |Tr(U rho)|. Throws VanishingTrace below 1e-9.
PhaseResult mixed_phase(const DensityOperator& rho, const UnitaryOperator& u);

// Mixed-state profile computed as the weighted sum of the pure profiles of an
// eigen-decomposition of rho, checked pointwise (1e-9) against the
// basis-free form 2 + 2|Tr(U rho)| cos(chi - arg Tr(U rho)). A disagreement
// throws DecompositionFailure.
InterferenceProfile mixed_interference_profile(const DensityOperator& rho,
                                               const UnitaryOperator& u,
                                               std::span<const double> chis);

// Ordinary least squares fit of I(chi) = c0 + c1 cos chi + c2 sin chi.
// phase = atan2(c2, c1) is where the fringe peaks, visibility = |(c1, c2)| / c0.
// Needs at least 3 samples spanning pi or more (InvalidArgument otherwise);
// throws IllConditioned for a rank-deficient design or a non-positive mean.
// Fits with visibility below 1e-9 come back with defined = false.
PhaseResult fit_fringe(std::span<const FringeSample> samples);

// n equally spaced angles in [0, 2 pi).
std::vector<double> uniform_chis(std::size_t n);

// Adds N(0, sigma^2) noise to every intensity.
void add_gaussian_noise(std::vector<FringeSample>& samples, double sigma, Rng& rng);

// Maximum over samples of |I(chi) - (2 + 2 V cos(chi - phase))|.
double closed_form_profile_deviation(std::span<const FringeSample> samples, double phase,
                                     double visibility);

}  // namespace pancha
