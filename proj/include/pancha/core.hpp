#pragma once

// Complex linear algebra substrate: pure states, density operators, unitaries,
// the qubit <-> Bloch sphere chart and a reproducible random state source.
//
// Conventions used everywhere in the library:
//   * phases are principal values in (-pi, pi]
//   * bloch_to_state fixes the gauge so the first amplitude is real and >= 0
//   * tensor products order indices as (system (x) ancilla), i.e. the first
//     factor is the slow index: index = i_first * dim_second + i_second
//   * at the Bloch poles the azimuth is reported as 0

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pancha {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Moduli below this make an argument numerically meaningless; phases are
// reported as undefined instead.
inline constexpr double kOrthogonalityEpsilon = 1e-9;

// |p x q| below this leaves a rotation axis undefined.
inline constexpr double kGeodesicEpsilon = 1e-8;

// Reduce an angle to (-pi, pi].
double wrap_phase(double angle);

// Principal argument in (-pi, pi].
double arg(Complex z);

struct BlochPoint {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  Vec3 direction() const;
  static BlochPoint from_direction(const Vec3& v);
};

class StateVector {
 public:
  // Throws InvalidArgument unless the amplitudes have unit norm within 1e-12.
  explicit StateVector(CVector amplitudes);

  static StateVector normalized(CVector amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  // e^{i phase} |this>
  StateVector rephased(double phase) const;

 private:
  CVector amps_;
};

class UnitaryOperator {
 public:
  // Throws InvalidArgument unless ||U^dagger U - 1||_F <= 1e-10.
  explicit UnitaryOperator(CMatrix entries);

  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  UnitaryOperator adjoint() const;
  Complex determinant() const { return m_.determinant(); }

 private:
  CMatrix m_;
};

UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs);
StateVector operator*(const UnitaryOperator& u, const StateVector& s);

class DensityOperator {
 public:
  // Validates hermiticity (1e-12), unit trace (1e-12) and eigenvalues >= -1e-12.
  explicit DensityOperator(CMatrix entries);

  static DensityOperator pure(const StateVector& s);

  // (1 + r n.sigma) / 2 with n the Bloch direction of `axis`; eigenvalues (1 +- r)/2.
  static DensityOperator qubit(double bloch_radius, const BlochPoint& axis);

  // sum_k w_k |v_k><v_k|; the vectors need not span the space.
  static DensityOperator from_spectrum(std::span<const double> weights,
                                       std::span<const StateVector> vectors);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

  struct Spectrum {
    std::vector<double> weights;
    std::vector<StateVector> vectors;
  };

  // Eigenvalues in ascending order with orthonormal eigenvectors. Degenerate
  // operators are decomposed in an arbitrary basis of each eigenspace.
  Spectrum eigen_decomposition() const;

 private:
  CMatrix m_;
};

Complex inner_product(const StateVector& a, const StateVector& b);

// (cos(theta/2), e^{i phi} sin(theta/2))
StateVector bloch_to_state(const BlochPoint& p);
BlochPoint state_to_bloch(const StateVector& s);

// Expectation value of the Pauli vector for a qubit state.
Vec3 bloch_vector(const StateVector& s);

// The qubit state orthogonal to `s`, (-conj(b), conj(a)) for s = (a, b).
StateVector orthogonal_complement(const StateVector& s);

StateVector tensor(const StateVector& a, const StateVector& b);
UnitaryOperator tensor(const UnitaryOperator& a, const UnitaryOperator& b);

const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

// cos(angle/2) 1 - i sin(angle/2) (axis . sigma). The axis is normalised;
// throws ZeroAxis when it has no direction.
UnitaryOperator matrix_exponential_su2(const Vec3& axis, double angle);

// exp(-i H t) for a hermitian H, via its eigen-decomposition.
UnitaryOperator evolution_operator(const CMatrix& hamiltonian, double t);

// Seeded source of uniform, normal and Haar-random draws.
//
// Built on std::mt19937_64, whose output sequence is fixed by the standard.
// Uniform and normal variates are derived here (53-bit mantissa fill and the
// Box-Muller transform) rather than via <random> distributions, whose
// algorithms are implementation defined, so draws agree across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // N(0, 1)
  std::uint64_t next() { return engine_(); }

  // Haar-random pure state: 2 dim standard normals as real and imaginary
  // parts, normalised.
  StateVector state(std::size_t dim);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

StateVector random_state(std::uint64_t seed, std::size_t dim);

}  // namespace pancha
