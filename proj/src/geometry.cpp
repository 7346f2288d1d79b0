#include "pancha/geometry.hpp"

#include <cmath>
#include <string>

#include "pancha/error.hpp"

namespace pancha {

namespace {

constexpr double kBasisTolerance = 1e-10;
constexpr double kWeightTolerance = 1e-10;
constexpr double kDegeneracyTolerance = 1e-12;
constexpr double kWindingTolerance = 1e-9;

Complex checked_overlap(const StateVector& bra, const StateVector& ket, const char* bra_name,
                        const char* ket_name) {
  const Complex z = inner_product(bra, ket);
  if (std::abs(z) < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates,
          std::string("<") + bra_name + "|" + ket_name + "> vanishes");
  }
  return z;
}

void check_vertex_pair(const Vec3& p, const Vec3& q, const char* what) {
  if (p.cross(q).norm() < kGeodesicEpsilon) {
    raise(ErrorCode::DegenerateTriangle,
          std::string(what) + (p.dot(q) > 0.0 ? " coincide" : " are antipodal"));
  }
}

void check_orthonormal(const std::vector<StateVector>& basis, std::size_t dim) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != dim) raise(ErrorCode::DimensionMismatch, "basis vector dimension");
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (std::abs(inner_product(basis[i], basis[j])) > kBasisTolerance) {
        raise(ErrorCode::InvalidArgument, "eigenbasis is not orthonormal");
      }
    }
  }
}

void check_weights(const std::vector<double>& w) {
  if (w.empty()) raise(ErrorCode::InvalidArgument, "mixed sequence needs at least one weight");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= -kWeightTolerance && x <= 1.0 + kWeightTolerance)) {
      raise(ErrorCode::InvalidArgument, "weights must lie in [0, 1]");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    raise(ErrorCode::InvalidArgument, "weights must sum to 1");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (std::abs(w[i] - w[j]) < kDegeneracyTolerance) {
        raise(ErrorCode::DegenerateSpectrum, "repeated eigenvalue " + std::to_string(w[i]));
      }
    }
  }
}

}  // namespace

double bargmann_invariant(const StateVector& a, const StateVector& b, const StateVector& c) {
  const Complex ac = checked_overlap(a, c, "A", "C");
  const Complex cb = checked_overlap(c, b, "C", "B");
  const Complex ba = checked_overlap(b, a, "B", "A");
  return arg(ac * cb * ba);
}

double multi_vertex_invariant(std::span<const StateVector> states) {
  if (states.empty()) raise(ErrorCode::InvalidArgument, "invariant needs at least one state");
  Complex product = 1.0;
  // Closing link <P0|Pn> first, then walk backwards down the chain.
  for (std::size_t i = states.size(); i-- > 0;) {
    const std::size_t next = (i + 1) % states.size();
    const Complex z = inner_product(states[next], states[i]);
    if (std::abs(z) < kOrthogonalityEpsilon) {
      raise(ErrorCode::OrthogonalStates, "<P" + std::to_string(next) + "|P" + std::to_string(i) +
                                             "> vanishes");
    }
    product *= z / std::abs(z);
  }
  return arg(product);
}

double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double numerator = a.dot(b.cross(c));
  const double denominator = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(numerator, denominator);
}

double solid_angle(const SphericalTriangle& t) {
  const Vec3 a = t.a.direction();
  const Vec3 b = t.b.direction();
  const Vec3 c = t.c.direction();
  check_vertex_pair(a, b, "vertices A and B");
  check_vertex_pair(b, c, "vertices B and C");
  check_vertex_pair(c, a, "vertices C and A");
  return triangle_solid_angle(a, b, c);
}

UnitaryOperator geodesic_unitary(const BlochPoint& p, const BlochPoint& q) {
  const Vec3 u = p.direction();
  const Vec3 v = q.direction();
  const Vec3 axis = u.cross(v);
  const double s = axis.norm();
  if (s < kGeodesicEpsilon) {
    if (u.dot(v) > 0.0) return UnitaryOperator::identity(2);
    raise(ErrorCode::AntipodalPoints, "geodesic between antipodal points is not unique");
  }
  return matrix_exponential_su2(axis / s, std::atan2(s, u.dot(v)));
}

UnitaryOperator loop_holonomy(const SphericalTriangle& t) {
  return geodesic_unitary(t.c, t.a) * geodesic_unitary(t.b, t.c) * geodesic_unitary(t.a, t.b);
}

double mixed_multi_vertex_invariant(const MixedSequence& seq) {
  check_weights(seq.weights);
  if (seq.bases.empty()) raise(ErrorCode::InvalidArgument, "mixed sequence has no vertices");
  const std::size_t dim = seq.u.dim();
  for (const auto& basis : seq.bases) {
    if (basis.size() != seq.weights.size()) {
      raise(ErrorCode::InvalidArgument, "each vertex needs one eigenvector per weight");
    }
    check_orthonormal(basis, dim);
  }

  Complex total = 0.0;
  std::vector<StateVector> chain;
  for (std::size_t k = 0; k < seq.weights.size(); ++k) {
    const StateVector& first = seq.bases.front()[k];
    const Complex loop = inner_product(first, seq.u * first);
    if (std::abs(loop) < kOrthogonalityEpsilon) {
      raise(ErrorCode::OrthogonalStates, "<A_" + std::to_string(k) + "|U|A_" +
                                             std::to_string(k) + "> vanishes");
    }
    chain.clear();
    for (const auto& basis : seq.bases) chain.push_back(basis[k]);
    total += seq.weights[k] * std::abs(loop) * std::polar(1.0, multi_vertex_invariant(chain));
  }
  if (std::abs(total) < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates, "weighted mixed invariant vanishes");
  }
  return arg(total);
}

double mixed_bargmann(const MixedTriple& mt) { return mixed_multi_vertex_invariant(mt.as_sequence()); }

double mixed_solid_angle_phase(double r, double omega) {
  if (std::abs(r) < kDegeneracyTolerance) {
    raise(ErrorCode::DegenerateSpectrum, "r = 0 leaves the eigenbasis undefined");
  }
  if (!(r >= -1.0 && r <= 1.0)) raise(ErrorCode::InvalidArgument, "r must lie in [-1, 1]");
  if (!(std::abs(omega) < kTwoPi - kWindingTolerance)) {
    raise(ErrorCode::BranchAmbiguity, "solid angle must satisfy |omega| < 2 pi");
  }
  return std::atan2(-r * std::sin(omega / 2.0), std::cos(omega / 2.0));
}

MixedTriple qubit_mixed_triple(double r, const SphericalTriangle& t) {
  if (r == 0.0) raise(ErrorCode::DegenerateSpectrum, "r = 0 leaves the eigenbasis undefined");
  const StateVector a0 = bloch_to_state(t.a);
  const StateVector a1 = orthogonal_complement(a0);
  const UnitaryOperator to_b = geodesic_unitary(t.a, t.b);
  const UnitaryOperator u = geodesic_unitary(t.b, t.c) * to_b;
  MixedTriple mt;
  mt.weights = {(1.0 + r) / 2.0, (1.0 - r) / 2.0};
  mt.basis_a = {a0, a1};
  mt.basis_b = {to_b * a0, to_b * a1};
  mt.basis_c = {u * a0, u * a1};
  mt.u = u;
  return mt;
}

}  // namespace pancha
