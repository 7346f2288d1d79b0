#include "pancha/phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pancha/error.hpp"

namespace pancha {

namespace {

constexpr double kRouteTolerance = 1e-9;

PhaseResult from_overlap(Complex z) {
  PhaseResult r;
  r.visibility = std::abs(z);
  r.defined = r.visibility >= kOrthogonalityEpsilon;
  r.phase = r.defined ? arg(z) : 0.0;
  return r;
}

}  // namespace

PhaseResult pancharatnam_phase(const StateVector& a, const StateVector& b) {
  const Complex z = inner_product(a, b);
  if (std::abs(z) < kOrthogonalityEpsilon) {
    raise(ErrorCode::OrthogonalStates, "|<a|b>| = " + std::to_string(std::abs(z)));
  }
  return from_overlap(z);
}

InterferenceProfile pure_interference_profile(const StateVector& a, const StateVector& b,
                                              std::span<const double> chis) {
  if (a.dim() != b.dim()) raise(ErrorCode::DimensionMismatch, "profile states differ in dimension");
  InterferenceProfile out;
  out.samples.reserve(chis.size());
  for (double chi : chis) {
    const CVector sum = std::polar(1.0, chi) * a.amplitudes() + b.amplitudes();
    out.samples.push_back({chi, sum.squaredNorm()});
  }
  out.extracted = fit_fringe(out.samples);
  return out;
}

PhaseResult mixed_phase(const DensityOperator& rho, const UnitaryOperator& u) {
  if (rho.dim() != u.dim()) raise(ErrorCode::DimensionMismatch, "mixed phase operands");
  const Complex tr = (u.matrix() * rho.matrix()).trace();
  if (std::abs(tr) < kOrthogonalityEpsilon) {
    raise(ErrorCode::VanishingTrace, "|Tr(U rho)| = " + std::to_string(std::abs(tr)));
  }
  return from_overlap(tr);
}

InterferenceProfile mixed_interference_profile(const DensityOperator& rho,
                                               const UnitaryOperator& u,
                                               std::span<const double> chis) {
  if (rho.dim() != u.dim()) raise(ErrorCode::DimensionMismatch, "mixed profile operands");
  const auto spectrum = rho.eigen_decomposition();

  std::vector<StateVector> images;
  images.reserve(spectrum.vectors.size());
  for (const auto& v : spectrum.vectors) images.push_back(u * v);

  const Complex tr = (u.matrix() * rho.matrix()).trace();
  const double vis = std::abs(tr);
  const double ph = vis > 0.0 ? arg(tr) : 0.0;

  InterferenceProfile out;
  out.samples.reserve(chis.size());
  for (double chi : chis) {
    const Complex shift = std::polar(1.0, chi);
    double weighted = 0.0;
    for (std::size_t k = 0; k < images.size(); ++k) {
      const CVector sum = shift * spectrum.vectors[k].amplitudes() + images[k].amplitudes();
      weighted += spectrum.weights[k] * sum.squaredNorm();
    }
    const double closed = 2.0 + 2.0 * vis * std::cos(chi - ph);
    if (!(std::abs(weighted - closed) <= kRouteTolerance)) {
      raise(ErrorCode::DecompositionFailure,
            "eigen-decomposed profile disagrees with the trace form at chi = " +
                std::to_string(chi));
    }
    out.samples.push_back({chi, weighted});
  }
  out.extracted = fit_fringe(out.samples);
  return out;
}

PhaseResult fit_fringe(std::span<const FringeSample> samples) {
  if (samples.size() < 3) raise(ErrorCode::InvalidArgument, "fringe fit needs at least 3 samples");
  const auto [lo, hi] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const FringeSample& x, const FringeSample& y) { return x.chi < y.chi; });
  if (hi->chi - lo->chi < kPi - 1e-12) {
    raise(ErrorCode::InvalidArgument, "fringe samples must span at least pi");
  }

  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double chi = samples[static_cast<std::size_t>(i)].chi;
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(chi);
    design(i, 2) = std::sin(chi);
    y[i] = samples[static_cast<std::size_t>(i)].intensity;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv[2] <= 1e-10 * sv[0]) {
    raise(ErrorCode::IllConditioned, "fringe design matrix is rank deficient");
  }
  const Eigen::Vector3d c = svd.solve(y);
  if (!(c[0] > 1e-12)) raise(ErrorCode::IllConditioned, "fringe mean intensity is not positive");

  PhaseResult r;
  const double amplitude = std::hypot(c[1], c[2]);
  r.visibility = amplitude / c[0];
  r.defined = r.visibility >= kOrthogonalityEpsilon;
  r.phase = r.defined ? wrap_phase(std::atan2(c[2], c[1])) : 0.0;
  return r;
}

std::vector<double> uniform_chis(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return out;
}

void add_gaussian_noise(std::vector<FringeSample>& samples, double sigma, Rng& rng) {
  if (sigma == 0.0) return;
  for (auto& s : samples) s.intensity += sigma * rng.normal();
}

double closed_form_profile_deviation(std::span<const FringeSample> samples, double phase,
                                     double visibility) {
  double worst = 0.0;
  for (const auto& s : samples) {
    const double model = 2.0 + 2.0 * visibility * std::cos(s.chi - phase);
    worst = std::max(worst, std::abs(s.intensity - model));
  }
  return worst;
}

}  // namespace pancha
