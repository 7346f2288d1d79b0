#pragma once

// Relative phase of a polarisation-entangled photon pair whose photons are
// each carried around a loop on their own Bloch sphere.
//
// The closed forms report arctan((1 - 2 lambda) tan(s/2)), s = omega + omega',
// with the quadrant taken from cos(s/2). This is the argument of
// <Pi0|Pif> = cos(s/2) + i (1 - 2 lambda) sin(s/2) for every s, including the
// half-turn jumps to +-pi that make the maximally entangled phase 0 or pi.

#include <span>
#include <utility>

#include "pancha/geometry.hpp"
#include "pancha/phase.hpp"

namespace pancha {

class SchmidtState {
 public:
  // sqrt(lambda) |A A'> + sqrt(1 - lambda) |A_perp A'_perp>, index order
  // (photon 1 (x) photon 2). Pairs must be orthogonal within 1e-10.
  SchmidtState(double lambda, StateVector a, StateVector a_perp, StateVector a_prime,
               StateVector a_prime_perp);

  // Uses the orthogonal complements of `a` and `a_prime`.
  static SchmidtState aligned(double lambda, const StateVector& a, const StateVector& a_prime);

  double lambda() const { return lambda_; }
  const StateVector& a() const { return a_; }
  const StateVector& a_perp() const { return a_perp_; }
  const StateVector& a_prime() const { return a_prime_; }
  const StateVector& a_prime_perp() const { return a_prime_perp_; }

  StateVector vector() const;

 private:
  double lambda_;
  StateVector a_;
  StateVector a_perp_;
  StateVector a_prime_;
  StateVector a_prime_perp_;
};

struct LoopPair {
  SphericalTriangle photon1;
  SphericalTriangle photon2;
};

// Xi = |1 - 2 lambda|
double degree_of_entanglement(const SchmidtState& s);
double degree_of_entanglement(double lambda);

// -(omega + omega') / 2 wrapped to (-pi, pi].
double product_loop_phase(double omega, double omega_prime);

// Phase and visibility sqrt(cos^2(s/2) + (1 - 2 lambda)^2 sin^2(s/2)).
// Throws OrthogonalStates where the visibility drops below 1e-9.
PhaseResult entangled_phase_closed_form(double lambda, double omega, double omega_prime);

// Pi0 and Pif = (U1 (x) U2) Pi0 with U1, U2 the loop holonomies. Each loop
// must start at its photon's |A> (|<A|vertex>| = 1 within 1e-8), otherwise
// BasisMisaligned.
std::pair<StateVector, StateVector> loop_pair_states(const SchmidtState& s, const LoopPair& loops);

// pancharatnam_phase(Pi0, Pif) from the four-dimensional simulation.
PhaseResult simulate_loop_pair(const SchmidtState& s, const LoopPair& loops);

// |tan(entangled phase) / tan(product phase)|. Throws UndefinedRatio when
// tan of the product phase is 0 or infinite, or the entangled phase is undefined.
double nonlinearity_ratio(double lambda, double omega, double omega_prime);

// Entangled phase with the second photon's loop shrunk to a point. Equal to
// the mixed-state phase at Bloch radius r = 2 lambda - 1. Throws
// BranchAmbiguity for |omega| >= 2 pi and OrthogonalStates where it vanishes.
double ancilla_reduction_phase(double lambda, double omega);

// |e^{i chi} Pi0 + Pif|^2 sampled directly, with the fitted phase/visibility.
InterferenceProfile franson_coincidence_profile(const SchmidtState& s, const LoopPair& loops,
                                                std::span<const double> chis);

}  // namespace pancha
