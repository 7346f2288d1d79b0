#include "pancha/geometric_phase.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pancha/error.hpp"
#include "pancha/geometry.hpp"

namespace pancha {

namespace {

Complex link_overlap(const DiscretePath& path, std::size_t j) {
  const Complex z = inner_product(path.states()[j + 1], path.states()[j]);
  if (std::abs(z) < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates, "link " + std::to_string(j) + " -> " +
                                           std::to_string(j + 1) + " has vanishing overlap");
  }
  return z;
}

Complex endpoint_overlap(const DiscretePath& path) {
  const Complex z = inner_product(path.states().front(), path.states().back());
  if (std::abs(z) < kOrthogonalityEpsilon) {
    raise(ErrorCode::VanishingEndpointOverlap, "<A_0|A_tau> vanishes");
  }
  return z;
}

double expected_energy(const StateVector& s, const CMatrix& h) {
  return s.amplitudes().dot(h * s.amplitudes()).real();
}

Vec3 precession_axis(double theta) { return {std::sin(theta), 0.0, std::cos(theta)}; }

}  // namespace

DiscretePath::DiscretePath(std::vector<double> times, std::vector<StateVector> states,
                           std::vector<CMatrix> generators)
    : times_(std::move(times)), states_(std::move(states)), generators_(std::move(generators)) {
  if (states_.size() < 2) raise(ErrorCode::InvalidArgument, "a path needs at least two samples");
  if (times_.size() != states_.size()) {
    raise(ErrorCode::InvalidArgument, "a path needs one time per sample");
  }
  for (std::size_t j = 0; j + 1 < times_.size(); ++j) {
    if (!(times_[j + 1] > times_[j])) {
      raise(ErrorCode::InvalidArgument, "path times must be strictly increasing");
    }
  }
  const std::size_t d = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != d) raise(ErrorCode::DimensionMismatch, "path samples differ in dimension");
  }
  if (!generators_.empty()) {
    if (generators_.size() != states_.size()) {
      raise(ErrorCode::InvalidArgument, "a path needs one generator per sample");
    }
    for (const auto& h : generators_) {
      if (h.rows() != static_cast<Eigen::Index>(d) || h.cols() != static_cast<Eigen::Index>(d)) {
        raise(ErrorCode::DimensionMismatch, "generator dimension");
      }
    }
  }
}

double chain_phase(const DiscretePath& path) {
  Complex product = endpoint_overlap(path);
  product /= std::abs(product);
  for (std::size_t j = path.size() - 1; j-- > 0;) {
    const Complex z = link_overlap(path, j);
    product *= z / std::abs(z);
  }
  return arg(product);
}

bool is_parallel_lift(const DiscretePath& path, double tol) {
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    const Complex z = inner_product(path.states()[j + 1], path.states()[j]);
    if (std::abs(z) < kOrthogonalityEpsilon || std::abs(arg(z)) > tol) return false;
  }
  return true;
}

DiscretePath make_parallel_lift(const DiscretePath& path) {
  std::vector<StateVector> lifted;
  lifted.reserve(path.size());
  lifted.push_back(path.states().front());
  for (std::size_t j = 1; j < path.size(); ++j) {
    const StateVector& next = path.states()[j];
    const Complex z = inner_product(next, lifted.back());
    if (std::abs(z) < kOrthogonalityEpsilon) {
      raise(ErrorCode::OrthogonalStates,
            "link " + std::to_string(j - 1) + " -> " + std::to_string(j) + " has vanishing overlap");
    }
    lifted.push_back(next.rephased(arg(z)));
  }
  return DiscretePath(path.times(), std::move(lifted));
}

double dynamical_phase(const DiscretePath& path) {
  const auto& t = path.times();
  const auto& s = path.states();
  double gamma = 0.0;
  if (path.has_generators()) {
    const auto& h = path.generators();
    double previous = expected_energy(s[0], h[0]);
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      const double current = expected_energy(s[j + 1], h[j + 1]);
      gamma -= 0.5 * (t[j + 1] - t[j]) * (previous + current);
      previous = current;
    }
  } else {
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      gamma -= arg(link_overlap(path, j));
    }
  }
  return gamma;
}

double pancharatnam_vs_auxiliary(const DiscretePath& path) {
  const StateVector reference = path.states().front().rephased(dynamical_phase(path));
  const Complex z = inner_product(reference, path.states().back());
  if (std::abs(z) < kOrthogonalityEpsilon) {
    raise(ErrorCode::VanishingEndpointOverlap, "<At_tau|A_tau> vanishes");
  }
  return arg(z);
}

double geodesic_closure_solid_angle(const DiscretePath& path) {
  if (path.dim() != 2) raise(ErrorCode::DimensionMismatch, "solid angles need a qubit path");
  std::vector<Vec3> points;
  points.reserve(path.size());
  for (const auto& s : path.states()) points.push_back(bloch_vector(s).normalized());

  const Vec3& first = points.front();
  const Vec3& last = points.back();
  if (first.cross(last).norm() < kGeodesicEpsilon && first.dot(last) < 0.0) {
    raise(ErrorCode::AntipodalEndpoints, "closing geodesic is not unique");
  }

  // Any apex not antipodal to a vertex gives the same closed-polygon area
  // modulo 4 pi; prefer the start point, where the closing edge drops out.
  Vec3 mean = Vec3::Zero();
  for (const auto& p : points) mean += p;
  std::array<Vec3, 5> candidates = {first, mean, Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  const Vec3* apex = nullptr;
  for (auto& c : candidates) {
    if (c.norm() < 1e-6) continue;
    c.normalize();
    double closest = 2.0;
    for (const auto& p : points) closest = std::min(closest, (c + p).norm());
    if (closest > 1e-3) {
      apex = &c;
      break;
    }
  }
  if (apex == nullptr) {
    raise(ErrorCode::DegenerateTriangle, "no admissible apex for the area fan");
  }

  double omega = 0.0;
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    omega += triangle_solid_angle(*apex, points[j], points[j + 1]);
  }
  omega += triangle_solid_angle(*apex, last, first);
  // Reduce to (-2 pi, 2 pi].
  omega = std::remainder(omega, 2.0 * kTwoPi);
  if (omega <= -kTwoPi) omega += 2.0 * kTwoPi;
  return omega;
}

CMatrix precession_hamiltonian(double theta) {
  return 0.5 * (std::sin(theta) * pauli_x() + std::cos(theta) * pauli_z());
}

CMatrix auxiliary_hamiltonian(const PrecessionSpec& spec) {
  return 0.5 * std::cos(spec.theta) * pauli_z();
}

DiscretePath precession_path(const PrecessionSpec& spec, std::size_t subdivisions) {
  if (subdivisions < 1) raise(ErrorCode::InvalidArgument, "subdivisions must be positive");
  if (!(spec.phi > 0.0)) raise(ErrorCode::InvalidArgument, "precession angle must be positive");
  const Vec3 axis = precession_axis(spec.theta);
  const CMatrix h = precession_hamiltonian(spec.theta);
  const StateVector start = StateVector::basis(2, 0);
  std::vector<double> times(subdivisions + 1);
  std::vector<StateVector> states;
  states.reserve(subdivisions + 1);
  for (std::size_t j = 0; j <= subdivisions; ++j) {
    times[j] = spec.phi * static_cast<double>(j) / static_cast<double>(subdivisions);
    // H = n.sigma / 2, so exp(-iHt) is the SU(2) rotation by t about n.
    states.push_back(matrix_exponential_su2(axis, times[j]) * start);
  }
  std::vector<CMatrix> generators(subdivisions + 1, h);
  return DiscretePath(std::move(times), std::move(states), std::move(generators));
}

double precession_phase_closed_form(const PrecessionSpec& spec) {
  const double c = std::cos(spec.theta);
  const double half = spec.phi / 2.0;
  if (std::abs(c) > 1e-12 && std::abs(std::cos(half)) < 1e-9) {
    raise(ErrorCode::BranchAmbiguity, "tan(phi/2) is at its pole");
  }
  return wrap_phase(std::atan2(-c * std::sin(half), std::cos(half)) + half * c);
}

UnitaryOperator noncyclic_holonomy(const PrecessionSpec& spec) {
  const UnitaryOperator forward = evolution_operator(precession_hamiltonian(spec.theta), spec.phi);
  const UnitaryOperator reference = evolution_operator(auxiliary_hamiltonian(spec), spec.phi);
  return reference.adjoint() * forward;
}

double auxiliary_simulated_phase(const PrecessionSpec& spec) {
  const StateVector up = StateVector::basis(2, 0);
  const Complex z = inner_product(up, noncyclic_holonomy(spec) * up);
  if (std::abs(z) < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates, "<+z|Ut^dag U|+z> vanishes");
  }
  return arg(z);
}

double mixed_noncyclic_phase(const PrecessionSpec& spec) {
  if (!(spec.r >= -1.0 && spec.r <= 1.0)) raise(ErrorCode::InvalidArgument, "r must lie in [-1, 1]");
  const double omega_gc = -2.0 * precession_phase_closed_form(spec);
  return mixed_solid_angle_phase(spec.r, omega_gc);
}

}  // namespace pancha
