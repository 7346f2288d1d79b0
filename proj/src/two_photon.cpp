#include "pancha/two_photon.hpp"

#include <cmath>
#include <string>

#include "pancha/error.hpp"

namespace pancha {

namespace {

constexpr double kPairTolerance = 1e-10;
constexpr double kAlignmentTolerance = 1e-8;

void check_pair(const StateVector& u, const StateVector& v, const char* name) {
  if (u.dim() != 2 || v.dim() != 2) {
    raise(ErrorCode::DimensionMismatch, std::string(name) + " must be qubit states");
  }
  if (std::abs(inner_product(u, v)) > kPairTolerance) {
    raise(ErrorCode::InvalidArgument, std::string(name) + " pair is not orthogonal");
  }
}

void check_aligned(const StateVector& s, const BlochPoint& vertex, const char* name) {
  const double overlap = std::abs(inner_product(s, bloch_to_state(vertex)));
  if (std::abs(overlap - 1.0) > kAlignmentTolerance) {
    raise(ErrorCode::BasisMisaligned,
          std::string(name) + " is not the first vertex of its loop (|overlap| = " +
              std::to_string(overlap) + ")");
  }
}

// (cos(s/2), (1 - 2 lambda) sin(s/2)) as a complex number.
Complex entangled_overlap(double lambda, double s) {
  return {std::cos(s / 2.0), (1.0 - 2.0 * lambda) * std::sin(s / 2.0)};
}

}  // namespace

SchmidtState::SchmidtState(double lambda, StateVector a, StateVector a_perp, StateVector a_prime,
                           StateVector a_prime_perp)
    : lambda_(lambda),
      a_(std::move(a)),
      a_perp_(std::move(a_perp)),
      a_prime_(std::move(a_prime)),
      a_prime_perp_(std::move(a_prime_perp)) {
  if (!(lambda_ >= 0.0 && lambda_ <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  }
  check_pair(a_, a_perp_, "photon 1");
  check_pair(a_prime_, a_prime_perp_, "photon 2");
}

SchmidtState SchmidtState::aligned(double lambda, const StateVector& a, const StateVector& a_prime) {
  return SchmidtState(lambda, a, orthogonal_complement(a), a_prime, orthogonal_complement(a_prime));
}

StateVector SchmidtState::vector() const {
  const CVector v = std::sqrt(lambda_) * tensor(a_, a_prime_).amplitudes() +
                    std::sqrt(1.0 - lambda_) * tensor(a_perp_, a_prime_perp_).amplitudes();
  return StateVector::normalized(v);
}

double degree_of_entanglement(double lambda) { return std::abs(1.0 - 2.0 * lambda); }

double degree_of_entanglement(const SchmidtState& s) { return degree_of_entanglement(s.lambda()); }

double product_loop_phase(double omega, double omega_prime) {
  return wrap_phase(-(omega + omega_prime) / 2.0);
}

PhaseResult entangled_phase_closed_form(double lambda, double omega, double omega_prime) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) raise(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  const double s = omega + omega_prime;
  const double half = s / 2.0;
  const double xi_signed = 1.0 - 2.0 * lambda;
  PhaseResult r;
  r.visibility = std::sqrt(std::pow(std::cos(half), 2) + xi_signed * xi_signed * std::pow(std::sin(half), 2));
  if (r.visibility < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates, "maximally entangled pair returns orthogonal");
  }
  r.phase = arg(entangled_overlap(lambda, s));
  r.defined = true;
  return r;
}

std::pair<StateVector, StateVector> loop_pair_states(const SchmidtState& s, const LoopPair& loops) {
  check_aligned(s.a(), loops.photon1.a, "photon 1 state");
  check_aligned(s.a_prime(), loops.photon2.a, "photon 2 state");
  const UnitaryOperator u = tensor(loop_holonomy(loops.photon1), loop_holonomy(loops.photon2));
  StateVector initial = s.vector();
  StateVector final_state = u * initial;
  return {std::move(initial), std::move(final_state)};
}

PhaseResult simulate_loop_pair(const SchmidtState& s, const LoopPair& loops) {
  const auto [initial, final_state] = loop_pair_states(s, loops);
  return pancharatnam_phase(initial, final_state);
}

double nonlinearity_ratio(double lambda, double omega, double omega_prime) {
  const double product = product_loop_phase(omega, omega_prime);
  if (std::abs(std::sin(product)) < 1e-12 || std::abs(std::cos(product)) < 1e-12) {
    raise(ErrorCode::UndefinedRatio, "tan of the product phase is 0 or infinite");
  }
  PhaseResult entangled;
  try {
    entangled = entangled_phase_closed_form(lambda, omega, omega_prime);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OrthogonalStates) throw;
    raise(ErrorCode::UndefinedRatio, "entangled phase is undefined");
  }
  return std::abs(std::tan(entangled.phase) / std::tan(product));
}

double ancilla_reduction_phase(double lambda, double omega) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) raise(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  if (!(std::abs(omega) < kTwoPi - 1e-9)) {
    raise(ErrorCode::BranchAmbiguity, "solid angle must satisfy |omega| < 2 pi");
  }
  return entangled_phase_closed_form(lambda, omega, 0.0).phase;
}

InterferenceProfile franson_coincidence_profile(const SchmidtState& s, const LoopPair& loops,
                                                std::span<const double> chis) {
  const auto [initial, final_state] = loop_pair_states(s, loops);
  return pure_interference_profile(initial, final_state, chis);
}

}  // namespace pancha
