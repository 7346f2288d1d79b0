#pragma once

// Geometric phase of a sampled state path: the ordered overlap chain, parallel
// lifts, the dynamical phase, its cancellation against an auxiliary reference
// evolution, and the spin-1/2 precession example with its geodesically closed
// solid angle.
//
// Sign convention for the auxiliary evolution. The reference state is
// multiplied by e^{i gamma(t)} with gamma(t) = -int_0^t <A_s|H(s)|A_s> ds,
// i.e. the instantaneous expected energy. For precession about
// n = (sin theta, 0, cos theta) starting at |+z> this is exactly
// exp(-i Ht t) with Ht = (cos theta / 2) sigma_z. Reading the parallel
// purification condition for W_t = U_t |A0><A0| Ut_t literally gives the
// opposite sign of gamma; the convention here is the one that reproduces the
// closed-form precession result.

#include <cstddef>
#include <vector>

#include "pancha/core.hpp"

namespace pancha {

inline constexpr std::size_t kDefaultSubdivisions = 4096;

class DiscretePath {
 public:
  // At least two samples, strictly increasing times, one state per time and
  // either no generators or one hermitian generator per time.
  DiscretePath(std::vector<double> times, std::vector<StateVector> states,
               std::vector<CMatrix> generators = {});

  const std::vector<double>& times() const { return times_; }
  const std::vector<StateVector>& states() const { return states_; }
  const std::vector<CMatrix>& generators() const { return generators_; }
  bool has_generators() const { return !generators_.empty(); }
  std::size_t size() const { return states_.size(); }
  std::size_t dim() const { return states_.front().dim(); }

 private:
  std::vector<double> times_;
  std::vector<StateVector> states_;
  std::vector<CMatrix> generators_;
};

// Spin-1/2 precession about n = (sin theta, 0, cos theta) by angle phi under
// H = (sin theta sigma_x + cos theta sigma_z) / 2, so the duration equals phi.
// `r` is the Bloch radius (about z) of the mixed variant.
struct PrecessionSpec {
  double theta = 0.0;
  double phi = 0.0;
  double r = 1.0;
};

// arg(<A0|AN><AN|AN-1>...<A1|A0>). Independent of the phase of every sample.
// Throws OrthogonalStates for a vanishing link, VanishingEndpointOverlap if
// <A0|AN> vanishes.
double chain_phase(const DiscretePath& path);

// True iff every link <A_{j+1}|A_j> has |arg| <= tol.
bool is_parallel_lift(const DiscretePath& path, double tol);

// Rephases the samples in order so every link is real and positive. The
// result carries no generators, since they no longer generate the new lift.
DiscretePath make_parallel_lift(const DiscretePath& path);

// gamma = -int <A|H|A> dt (trapezoidal) when generators are present,
// otherwise sum_j arg <A_j|A_{j+1}>.
double dynamical_phase(const DiscretePath& path);

// arg <At_tau|A_tau> with |At_tau> = e^{i gamma(tau)} |A0>.
double pancharatnam_vs_auxiliary(const DiscretePath& path);

// Signed area bounded by the path's Bloch trace and the shortest geodesic
// from its end back to its start, summed as a fan of geodesic triangles.
// Qubit paths only; throws AntipodalEndpoints.
double geodesic_closure_solid_angle(const DiscretePath& path);

CMatrix precession_hamiltonian(double theta);

// (cos theta / 2) sigma_z
CMatrix auxiliary_hamiltonian(const PrecessionSpec& spec);

// Samples e^{-iHt}|+z> at t_j = j phi / N, j = 0..N, with H attached as the
// generator of every sample. Needs phi > 0 and N >= 1.
DiscretePath precession_path(const PrecessionSpec& spec,
                             std::size_t subdivisions = kDefaultSubdivisions);

// -arctan(cos theta tan(phi/2)) + (phi/2) cos theta, wrapped to (-pi, pi].
// The arctan takes its quadrant from cos(phi/2), so it equals the matrix
// element's argument for any phi. Throws BranchAmbiguity within 1e-9 of the
// tan pole at phi = pi unless cos theta = 0.
double precession_phase_closed_form(const PrecessionSpec& spec);

// Ut^dagger U = e^{i Ht phi} e^{-i H phi}.
UnitaryOperator noncyclic_holonomy(const PrecessionSpec& spec);

// arg <+z| e^{i Ht phi} e^{-i H phi} |+z> from matrix exponentials.
double auxiliary_simulated_phase(const PrecessionSpec& spec);

// -arctan(r tan(omega_gc / 2)) with omega_gc = -2 x precession_phase_closed_form.
double mixed_noncyclic_phase(const PrecessionSpec& spec);

}  // namespace pancha
