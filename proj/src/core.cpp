#include "pancha/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pancha/error.hpp"

namespace pancha {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-10;
constexpr double kPoleTolerance = 1e-12;

std::string describe_dim(std::size_t a, std::size_t b) {
  return std::to_string(a) + " vs " + std::to_string(b);
}

}  // namespace

double wrap_phase(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double arg(Complex z) {
  double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

// --- StateVector ------------------------------------------------------------

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) raise(ErrorCode::InvalidArgument, "empty state vector");
  const double n2 = amps_.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
    raise(ErrorCode::InvalidArgument,
          "state vector is not unit norm (|psi|^2 = " + std::to_string(n2) + ")");
  }
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double n = amplitudes.norm();
  if (!std::isfinite(n) || n < 1e-300) {
    raise(ErrorCode::InvalidArgument, "cannot normalise a zero vector");
  }
  return StateVector(amplitudes / n);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) raise(ErrorCode::InvalidArgument, "basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::rephased(double phase) const {
  return StateVector(amps_ * std::polar(1.0, phase));
}

// --- UnitaryOperator ----------------------------------------------------------

UnitaryOperator::UnitaryOperator(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    raise(ErrorCode::InvalidArgument, "unitary operator must be square");
  }
  const CMatrix defect = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
  const double d = defect.norm();
  if (!std::isfinite(d) || d > kUnitaryTolerance) {
    raise(ErrorCode::InvalidArgument,
          "operator is not unitary (||U^dag U - 1|| = " + std::to_string(d) + ")");
  }
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryOperator(CMatrix::Identity(n, n));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(m_.adjoint()); }

UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs) {
  if (lhs.dim() != rhs.dim()) {
    raise(ErrorCode::DimensionMismatch, "operator product " + describe_dim(lhs.dim(), rhs.dim()));
  }
  return UnitaryOperator(lhs.matrix() * rhs.matrix());
}

StateVector operator*(const UnitaryOperator& u, const StateVector& s) {
  if (u.dim() != s.dim()) {
    raise(ErrorCode::DimensionMismatch, "operator on state " + describe_dim(u.dim(), s.dim()));
  }
  // Unitaries are accepted at 1e-10, so renormalise to restore the 1e-12 state invariant.
  return StateVector::normalized(u.matrix() * s.amplitudes());
}

// --- DensityOperator ------------------------------------------------------------

DensityOperator::DensityOperator(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    raise(ErrorCode::InvalidArgument, "density operator must be square");
  }
  const double herm = (m_ - m_.adjoint()).norm();
  if (!std::isfinite(herm) || herm > kNormTolerance) {
    raise(ErrorCode::InvalidArgument, "density operator is not hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    raise(ErrorCode::InvalidArgument, "density operator trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    raise(ErrorCode::DecompositionFailure, "eigenvalue computation failed");
  }
  if (solver.eigenvalues().minCoeff() < -kNormTolerance) {
    raise(ErrorCode::InvalidArgument, "density operator has a negative eigenvalue");
  }
}

DensityOperator DensityOperator::pure(const StateVector& s) {
  return DensityOperator(s.amplitudes() * s.amplitudes().adjoint());
}

DensityOperator DensityOperator::qubit(double bloch_radius, const BlochPoint& axis) {
  if (!(bloch_radius >= -1.0 && bloch_radius <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "Bloch radius must lie in [-1, 1]");
  }
  const Vec3 n = axis.direction();
  CMatrix m = CMatrix::Identity(2, 2);
  m += bloch_radius * (n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z());
  m *= 0.5;
  // Clean rounding so the hermiticity check is exact.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::from_spectrum(std::span<const double> weights,
                                               std::span<const StateVector> vectors) {
  if (weights.empty() || weights.size() != vectors.size()) {
    raise(ErrorCode::InvalidArgument, "spectrum needs one vector per weight");
  }
  const auto n = static_cast<Eigen::Index>(vectors.front().dim());
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (static_cast<Eigen::Index>(vectors[k].dim()) != n) {
      raise(ErrorCode::DimensionMismatch, "spectrum vectors differ in dimension");
    }
    m += weights[k] * vectors[k].amplitudes() * vectors[k].amplitudes().adjoint();
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityOperator(std::move(m));
}

DensityOperator::Spectrum DensityOperator::eigen_decomposition() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_);
  if (solver.info() != Eigen::Success) {
    raise(ErrorCode::DecompositionFailure, "eigen-decomposition failed");
  }
  Spectrum out;
  for (Eigen::Index k = 0; k < m_.rows(); ++k) {
    out.weights.push_back(solver.eigenvalues()[k]);
    out.vectors.push_back(StateVector::normalized(solver.eigenvectors().col(k)));
  }
  return out;
}

// --- Bloch chart ------------------------------------------------------------------

Vec3 BlochPoint::direction() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

BlochPoint BlochPoint::from_direction(const Vec3& v) {
  const double n = v.norm();
  if (n < 1e-300) raise(ErrorCode::InvalidArgument, "zero Bloch vector has no direction");
  const Vec3 u = v / n;
  const double rho = std::hypot(u.x(), u.y());
  BlochPoint p;
  p.theta = std::atan2(rho, u.z());
  if (rho > kPoleTolerance) {
    p.phi = std::atan2(u.y(), u.x());
    if (p.phi < 0.0) p.phi += kTwoPi;
    if (p.phi >= kTwoPi) p.phi = 0.0;
  }
  return p;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    raise(ErrorCode::DimensionMismatch, "inner product " + describe_dim(a.dim(), b.dim()));
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

StateVector bloch_to_state(const BlochPoint& p) {
  CVector v(2);
  v[0] = std::cos(p.theta / 2.0);
  v[1] = std::polar(std::sin(p.theta / 2.0), p.phi);
  return StateVector::normalized(std::move(v));
}

BlochPoint state_to_bloch(const StateVector& s) {
  if (s.dim() != 2) raise(ErrorCode::DimensionMismatch, "Bloch chart needs a qubit state");
  const double m0 = std::abs(s[0]);
  const double m1 = std::abs(s[1]);
  BlochPoint p;
  p.theta = 2.0 * std::atan2(m1, m0);
  if (m0 > kPoleTolerance && m1 > kPoleTolerance) {
    double phi = std::arg(s[1]) - std::arg(s[0]);
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    p.phi = phi;
  }
  return p;
}

Vec3 bloch_vector(const StateVector& s) {
  if (s.dim() != 2) raise(ErrorCode::DimensionMismatch, "Bloch vector needs a qubit state");
  const Complex a = s[0];
  const Complex b = s[1];
  const Complex ab = std::conj(a) * b;
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

StateVector orthogonal_complement(const StateVector& s) {
  if (s.dim() != 2) raise(ErrorCode::DimensionMismatch, "complement needs a qubit state");
  CVector v(2);
  v[0] = -std::conj(s[1]);
  v[1] = std::conj(s[0]);
  return StateVector::normalized(std::move(v));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  CVector v(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    v.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  }
  return StateVector::normalized(std::move(v));
}

UnitaryOperator tensor(const UnitaryOperator& a, const UnitaryOperator& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  CMatrix m(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return UnitaryOperator(std::move(m));
}

const CMatrix& pauli_x() {
  static const CMatrix m = (CMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
  return m;
}

const CMatrix& pauli_y() {
  static const CMatrix m =
      (CMatrix(2, 2) << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0).finished();
  return m;
}

const CMatrix& pauli_z() {
  static const CMatrix m = (CMatrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished();
  return m;
}

UnitaryOperator matrix_exponential_su2(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!std::isfinite(n) || n < 1e-12) raise(ErrorCode::ZeroAxis, "rotation axis has zero length");
  const Vec3 u = axis / n;
  const CMatrix ns = u.x() * pauli_x() + u.y() * pauli_y() + u.z() * pauli_z();
  const Complex minus_i(0.0, -1.0);
  CMatrix m = std::cos(angle / 2.0) * CMatrix::Identity(2, 2) + minus_i * std::sin(angle / 2.0) * ns;
  return UnitaryOperator(std::move(m));
}

UnitaryOperator evolution_operator(const CMatrix& hamiltonian, double t) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    raise(ErrorCode::InvalidArgument, "hamiltonian must be square");
  }
  if ((hamiltonian - hamiltonian.adjoint()).norm() > 1e-10 * std::max(1.0, hamiltonian.norm())) {
    raise(ErrorCode::InvalidArgument, "hamiltonian is not hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    raise(ErrorCode::DecompositionFailure, "hamiltonian diagonalisation failed");
  }
  const auto& v = solver.eigenvectors();
  CVector phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    phases[k] = std::polar(1.0, -solver.eigenvalues()[k] * t);
  }
  return UnitaryOperator(v * phases.asDiagonal() * v.adjoint());
}

// --- Rng ---------------------------------------------------------------------------

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return radius * std::cos(kTwoPi * u2);
}

StateVector Rng::state(std::size_t dim) {
  if (dim < 2) raise(ErrorCode::InvalidArgument, "random states need dim >= 2");
  CVector v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) {
    const double re = normal();
    const double im = normal();
    z = Complex(re, im);
  }
  return StateVector::normalized(std::move(v));
}

StateVector random_state(std::uint64_t seed, std::size_t dim) {
  Rng rng(seed);
  return rng.state(dim);
}

}  // namespace pancha
