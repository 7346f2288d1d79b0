#include "pancha/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/QR>

#include "pancha/core.hpp"
#include "pancha/dual.hpp"
#include "pancha/geometric_phase.hpp"
#include "pancha/geometry.hpp"
#include "pancha/phase.hpp"
#include "pancha/two_photon.hpp"

namespace pancha::verify {

namespace {

double gap(double a, double b) { return std::abs(wrap_phase(a - b)); }

// Collects checks for one suite and forwards each to the caller as it lands.
class Battery {
 public:
  Battery(std::string suite, double scale, const std::function<void(const PropertyCheck&)>& sink,
          std::vector<PropertyCheck>& out)
      : suite_(std::move(suite)), scale_(scale), sink_(sink), out_(out) {}

  void at_most(std::string name, double observed, double tolerance) {
    PropertyCheck c{suite_, std::move(name), observed, tolerance * scale_, false, false};
    c.pass = std::isfinite(observed) && observed <= c.tolerance;
    emit(std::move(c));
  }

  void at_least(std::string name, double observed, double threshold) {
    PropertyCheck c{suite_, std::move(name), observed, threshold, true, false};
    c.pass = std::isfinite(observed) && observed >= threshold;
    emit(std::move(c));
  }

 private:
  void emit(PropertyCheck c) {
    if (sink_) sink_(c);
    out_.push_back(std::move(c));
  }

  std::string suite_;
  double scale_;
  const std::function<void(const PropertyCheck&)>& sink_;
  std::vector<PropertyCheck>& out_;
};

BlochPoint random_point(Rng& rng) { return state_to_bloch(rng.state(2)); }

Vec3 random_axis(Rng& rng) {
  Vec3 v;
  do {
    v = {rng.normal(), rng.normal(), rng.normal()};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

UnitaryOperator random_unitary(Rng& rng, std::size_t dim) {
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {rng.normal(), rng.normal()};
  }
  Eigen::HouseholderQR<CMatrix> qr(m);
  return UnitaryOperator(qr.householderQ() * CMatrix::Identity(dim, dim));
}

// Vertices pairwise well separated and not close to antipodal.
SphericalTriangle random_triangle(Rng& rng, double max_abs_omega = kTwoPi) {
  for (;;) {
    const SphericalTriangle t{random_point(rng), random_point(rng), random_point(rng)};
    const auto a = bloch_to_state(t.a);
    const auto b = bloch_to_state(t.b);
    const auto c = bloch_to_state(t.c);
    const double least = std::min({std::abs(inner_product(a, b)), std::abs(inner_product(b, c)),
                                   std::abs(inner_product(c, a))});
    const double most = std::max({std::abs(inner_product(a, b)), std::abs(inner_product(b, c)),
                                  std::abs(inner_product(c, a))});
    if (least <= 0.05 || most >= 1.0 - 1e-6) continue;
    if (std::abs(solid_angle(t)) >= max_abs_omega) continue;
    return t;
  }
}

const std::vector<double>& grid_thetas() {
  static const std::vector<double> v{kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3};
  return v;
}

const std::vector<double>& grid_phis() {
  static const std::vector<double> v{kPi / 4, kPi / 2, 3 * kPi / 4};
  return v;
}

void geometry_suite(Battery& b) {
  Rng rng(20240611);
  double cauchy = 0.0, round_trip = 0.0, tensor_norm = 0.0, additivity = 0.0;
  double gauge = 0.0, antisymmetry = 0.0, fit = 0.0, peak = 0.0;
  const auto dense = uniform_chis(4096);
  const auto coarse = uniform_chis(64);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 3);
    const StateVector x = rng.state(dim);
    const StateVector y = rng.state(dim);
    cauchy = std::max(cauchy, std::abs(inner_product(x, y)) - 1.0);
    const StateVector q = rng.state(2);
    round_trip = std::max(round_trip, std::abs(1.0 - std::abs(inner_product(q, bloch_to_state(state_to_bloch(q))))));
    tensor_norm = std::max(tensor_norm, std::abs(tensor(x, y).amplitudes().norm() - 1.0));

    const Vec3 n = random_axis(rng);
    const double s = rng.uniform(-kTwoPi, kTwoPi);
    const double t = rng.uniform(-kTwoPi, kTwoPi);
    const CMatrix composed = (matrix_exponential_su2(n, s) * matrix_exponential_su2(n, t)).matrix();
    additivity = std::max(additivity, (composed - matrix_exponential_su2(n, s + t).matrix()).norm());

    const PhaseResult p = pancharatnam_phase(x, y);
    const double mu = rng.uniform(-kPi, kPi);
    const double nu = rng.uniform(-kPi, kPi);
    gauge = std::max(gauge, gap(pancharatnam_phase(x.rephased(mu), y.rephased(nu)).phase, p.phase + nu - mu));
    antisymmetry = std::max(antisymmetry, gap(pancharatnam_phase(y, x).phase, -p.phase));

    const InterferenceProfile fine = pure_interference_profile(x, y, dense);
    const auto top = std::max_element(fine.samples.begin(), fine.samples.end(),
                                      [](const auto& l, const auto& r) { return l.intensity < r.intensity; });
    // Fringe peaks where chi cancels the relative phase, up to the grid step.
    peak = std::max(peak, std::min(gap(top->chi, p.phase), gap(top->chi, -p.phase)) / (kTwoPi / dense.size()));

    const PhaseResult fitted = fit_fringe(pure_interference_profile(x, y, coarse).samples);
    fit = std::max({fit, gap(fitted.phase, p.phase), std::abs(fitted.visibility - p.visibility)});
  }
  b.at_most("Cauchy-Schwarz bound on overlaps", std::max(cauchy, 0.0), 1e-12);
  b.at_most("Bloch chart round trip", round_trip, 1e-10);
  b.at_most("tensor product norm", tensor_norm, 1e-12);
  b.at_most("SU(2) rotations add about a fixed axis", additivity, 1e-10);
  b.at_most("Pancharatnam phase gauge covariance", gauge, 1e-10);
  b.at_most("Pancharatnam phase antisymmetry", antisymmetry, 1e-12);
  b.at_most("fringe maximum within one grid step of the phase", peak, 1.0);
  b.at_most("fringe fit on noiseless profile", fit, 1e-8);

  double law = 0.0, additive = 0.0, reversal = 0.0, spectrum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SphericalTriangle t = random_triangle(rng);
    const auto a = bloch_to_state(t.a);
    const auto bb = bloch_to_state(t.b);
    const auto c = bloch_to_state(t.c);
    const double omega = solid_angle(t);
    const double delta = bargmann_invariant(a, bb, c);
    law = std::max(law, gap(delta, -omega / 2));
    reversal = std::max(reversal, gap(bargmann_invariant(a, c, bb), -delta));

    const UnitaryOperator loop = loop_holonomy(t);
    const auto perp = orthogonal_complement(a);
    spectrum = std::max({spectrum, gap(arg(inner_product(a, loop * a)), -omega / 2),
                         gap(arg(inner_product(perp, loop * perp)), omega / 2)});

    const StateVector d = bloch_to_state(random_point(rng));
    if (std::abs(inner_product(c, d)) < 0.05 || std::abs(inner_product(d, a)) < 0.05) continue;
    const std::vector<StateVector> quad{a, bb, c, d};
    additive = std::max(additive, gap(multi_vertex_invariant(quad), delta + bargmann_invariant(a, c, d)));
  }
  b.at_most("Bargmann phase equals minus half the solid angle", law, 1e-9);
  b.at_most("four-vertex invariant splits into triangles", additive, 1e-9);
  b.at_most("orientation reversal conjugates the invariant", reversal, 1e-14);
  b.at_most("loop holonomy eigenphases are -+ half the solid angle", spectrum, 1e-8);
}

MixedSequence qubit_sequence(double r, const std::vector<BlochPoint>& vertices) {
  MixedSequence seq;
  seq.weights = {(1 + r) / 2, (1 - r) / 2};
  UnitaryOperator u = UnitaryOperator::identity(2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto s = bloch_to_state(vertices[i]);
    seq.bases.push_back({s, orthogonal_complement(s)});
    if (i > 0) u = geodesic_unitary(vertices[i - 1], vertices[i]) * u;
  }
  seq.u = u;
  return seq;
}

void mixed_suite(Battery& b) {
  Rng rng(7031);
  double basis = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 2);
    const UnitaryOperator frame = random_unitary(rng, dim);
    std::vector<double> w(dim);
    double total = 0.0;
    for (auto& x : w) total += (x = 0.05 + rng.uniform());
    std::vector<StateVector> vecs;
    for (std::size_t k = 0; k < dim; ++k) {
      w[k] /= total;
      vecs.push_back(frame * StateVector::basis(dim, k));
    }
    const UnitaryOperator u = random_unitary(rng, dim);
    const DensityOperator rho = DensityOperator::from_spectrum(w, vecs);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < dim; ++k) sum += w[k] * inner_product(vecs[k], u * vecs[k]);
    if (std::abs(sum) < 1e-6) continue;
    basis = std::max(basis, gap(mixed_phase(rho, u).phase, arg(sum)));
  }
  b.at_most("trace phase is independent of the eigenbasis", basis, 1e-10);

  double law = 0.0, profiles = 0.0;
  const auto chis = uniform_chis(64);
  for (int i = 0; i < 200; ++i) {
    const SphericalTriangle t = random_triangle(rng, kTwoPi - 0.1);
    const double r = 1.0 - rng.uniform();  // (0, 1]
    const MixedTriple mt = qubit_mixed_triple(r, t);
    law = std::max(law, gap(mixed_bargmann(mt), mixed_solid_angle_phase(r, solid_angle(t))));
    const DensityOperator rho = DensityOperator::qubit(r, t.a);
    const PhaseResult trace = mixed_phase(rho, mt.u);
    profiles = std::max(profiles, closed_form_profile_deviation(
                                      mixed_interference_profile(rho, mt.u, chis).samples, trace.phase,
                                      trace.visibility));
  }
  b.at_most("mixed Bargmann phase follows the solid-angle arctangent law", law, 1e-8);
  b.at_most("weighted-sum profile matches the trace profile", profiles, 1e-9);

  // Fixed counterexample: octant-sized triangles sharing the edge A-C.
  const std::vector<BlochPoint> quad{{0.3, 0.2}, {1.4, 0.1}, {1.5, 1.3}, {0.9, 2.2}};
  const double r = 0.5;
  const double whole = mixed_multi_vertex_invariant(qubit_sequence(r, quad));
  const double first = mixed_multi_vertex_invariant(qubit_sequence(r, {quad[0], quad[1], quad[2]}));
  const double second = mixed_multi_vertex_invariant(qubit_sequence(r, {quad[0], quad[2], quad[3]}));
  b.at_least("mixed four-vertex invariant is not additive (gap)", gap(whole, first + second), 1e-3);

  double noncyclic = 0.0;
  for (double theta : grid_thetas()) {
    for (double phi : grid_phis()) {
      for (double rr : {0.2, 0.5, 0.9}) {
        const PrecessionSpec spec{theta, phi, rr};
        const PhaseResult trace = mixed_phase(DensityOperator::qubit(rr, {0, 0}), noncyclic_holonomy(spec));
        noncyclic = std::max(noncyclic, gap(mixed_noncyclic_phase(spec), trace.phase));
      }
    }
  }
  b.at_most("mixed noncyclic law matches the holonomy trace", noncyclic, 1e-8);
}

void two_photon_suite(Battery& b) {
  Rng rng(5150);
  double phase = 0.0, visibility = 0.0, bound = 0.0, swing = 0.0, fit = 0.0, ancilla = 0.0;
  const auto chis = uniform_chis(64);
  for (int i = 0; i < 500; ++i) {
    const double lambda = rng.uniform();
    const LoopPair loops{random_triangle(rng), random_triangle(rng)};
    const SchmidtState s =
        SchmidtState::aligned(lambda, bloch_to_state(loops.photon1.a), bloch_to_state(loops.photon2.a));
    const double o1 = solid_angle(loops.photon1);
    const double o2 = solid_angle(loops.photon2);
    const PhaseResult sim = simulate_loop_pair(s, loops);
    const PhaseResult closed = entangled_phase_closed_form(lambda, o1, o2);
    bound = std::max(bound, sim.visibility - 1.0);
    visibility = std::max(visibility, std::abs(sim.visibility - closed.visibility));
    if (closed.visibility < 1e-6) continue;
    phase = std::max(phase, gap(sim.phase, closed.phase));

    const InterferenceProfile profile = franson_coincidence_profile(s, loops, chis);
    fit = std::max({fit, gap(profile.extracted.phase, sim.phase), std::abs(profile.extracted.visibility - sim.visibility)});
    const double p = sim.phase;
    const std::vector<double> extremes{p, p + kPi, -p, -p + kPi};
    const auto at = franson_coincidence_profile(s, loops, extremes).samples;
    const auto [lo, hi] = std::minmax_element(at.begin(), at.end(),
                                              [](const auto& l, const auto& r) { return l.intensity < r.intensity; });
    swing = std::max(swing, std::abs(hi->intensity - lo->intensity - 4.0 * sim.visibility));

    if (std::abs(2 * lambda - 1) > 1e-3 && std::abs(o1) < kTwoPi - 1e-3) {
      ancilla = std::max(ancilla, gap(ancilla_reduction_phase(lambda, o1), entangled_phase_closed_form(lambda, o1, 0).phase));
    }
  }
  b.at_most("simulated pair phase matches the closed form", phase, 1e-8);
  b.at_most("simulated pair visibility matches the closed form", visibility, 1e-8);
  b.at_most("pair visibility never exceeds one", std::max(bound, 0.0), 1e-12);
  b.at_most("coincidence fringe swing is four times the visibility", swing, 1e-8);
  b.at_most("coincidence fringe fit recovers phase and visibility", fit, 1e-8);
  b.at_most("single-loop entangled phase equals the ancilla reduction", ancilla, 1e-10);

  double quantised = 0.0;
  for (int i = 0; i < 200; ++i) {
    const LoopPair loops{random_triangle(rng), random_triangle(rng)};
    const SchmidtState s =
        SchmidtState::aligned(0.5, bloch_to_state(loops.photon1.a), bloch_to_state(loops.photon2.a));
    const auto [before, after] = loop_pair_states(s, loops);
    const Complex z = inner_product(before, after);
    if (std::abs(z) <= 1e-6) continue;
    quantised = std::max(quantised, std::min(gap(arg(z), 0.0), gap(arg(z), kPi)));
  }
  b.at_most("maximal entanglement quantises the phase to 0 or pi", quantised, 1e-8);
}

void geometric_phase_suite(Battery& b) {
  Rng rng(88);
  double lift_free = 0.0, cancellation = 0.0, lift = 0.0, lift_flag = 0.0;
  for (int i = 0; i < 12; ++i) {
    const PrecessionSpec spec{rng.uniform(0.2, kPi - 0.2), rng.uniform(0.3, kPi - 0.3)};
    const std::size_t n = 512 + 256 * static_cast<std::size_t>(i);
    const DiscretePath path = precession_path(spec, n);
    std::vector<StateVector> rephased;
    for (const auto& s : path.states()) rephased.push_back(s.rephased(rng.uniform(-kPi, kPi)));
    const double chain = chain_phase(path);
    lift_free = std::max(lift_free, gap(chain_phase(DiscretePath(path.times(), rephased)), chain));
    cancellation = std::max(cancellation, gap(pancharatnam_vs_auxiliary(path), chain) * static_cast<double>(n));

    const DiscretePath lifted = make_parallel_lift(DiscretePath(path.times(), rephased));
    if (!is_parallel_lift(lifted, 1e-10)) lift_flag = 1.0;
    for (std::size_t j = 0; j < path.size(); ++j) {
      lift = std::max(lift, std::abs(1.0 - std::abs(inner_product(lifted.states()[j], path.states()[j]))));
      if (j + 1 < path.size()) {
        lift = std::max(lift, std::abs(arg(inner_product(lifted.states()[j], lifted.states()[j + 1]))));
      }
    }
  }
  b.at_most("chain phase ignores per-state rephasing", lift_free, 1e-10);
  b.at_most("auxiliary cancellation matches chain phase (N x deviation)", cancellation, 5.0);
  b.at_most("parallel lift has real positive links on the same rays", std::max(lift, lift_flag), 1e-10);

  double simulated = 0.0, closure = 0.0, chain = 0.0, ratio_sum = 0.0;
  int ratio_count = 0;
  for (double theta : grid_thetas()) {
    for (double phi : grid_phis()) {
      const PrecessionSpec spec{theta, phi};
      const double closed = precession_phase_closed_form(spec);
      simulated = std::max(simulated, gap(auxiliary_simulated_phase(spec), closed));
      const DiscretePath path = precession_path(spec, 10000);
      closure = std::max(closure, gap(-geodesic_closure_solid_angle(path) / 2, closed));
      const double e1 = gap(chain_phase(path), closed);
      const double e2 = gap(chain_phase(precession_path(spec, 20000)), closed);
      chain = std::max(chain, e1);
      if (e1 > 1e-13) {  // the equatorial orbit is exact at every N
        ratio_sum += e1 / std::max(e2, 1e-300);
        ++ratio_count;
      }
    }
  }
  b.at_most("auxiliary evolution reproduces the noncyclic closed form", simulated, 1e-9);
  b.at_most("geodesic closure area gives the noncyclic phase", closure, 1e-4);
  b.at_most("chain phase at N = 10000 matches the closed form", chain, 1e-3);
  b.at_least("chain error ratio between N and 2N", ratio_count ? ratio_sum / ratio_count : 0.0, 1.9);
}

void dual_suite(Battery& b) {
  Rng rng(4242);
  double unitarity = 0.0, expansion = 0.0;
  for (int i = 0; i < 200; ++i) {
    const DualSetupSpec spec{rng.uniform(0, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    const StateVector psi = rng.state(4);
    const CVector raw = apply_arm_fields(psi, spec).amplitudes();
    unitarity = std::max(unitarity, std::abs(raw.norm() - 1.0));
    const StateVector direct = apply_arm_fields(prepare_beam_state(spec), spec);
    expansion = std::max(expansion, (direct.amplitudes() - dual_expansion(spec).amplitudes()).cwiseAbs().maxCoeff());
  }
  b.at_most("arm fields preserve the norm", unitarity, 1e-12);
  b.at_most("beam-spin expansion equals direct application", expansion, 1e-10);

  double duality = 0.0, channels = 0.0, fringe = 0.0;
  const auto chis = uniform_chis(64);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double theta = (i + 0.5) * kPi / 20;
      const double delta = -kPi + (j + 0.5) * kTwoPi / 20;
      const DualSweepSpec sweep{theta, delta};
      const PhaseResult closed = dual_phase_closed_form(sweep.at(0.0));
      const PhaseResult spin = spin_pancharatnam({theta, delta});
      duality = std::max({duality, gap(closed.phase, spin.phase), std::abs(closed.visibility - spin.visibility)});
      const auto plus = dual_channel_intensities(sweep, chis, true);
      const auto minus = dual_channel_intensities(sweep, chis, false);
      for (std::size_t k = 0; k < chis.size(); ++k) {
        channels = std::max(channels, std::abs(plus[k].intensity + minus[k].intensity - 4.0));
      }
      const PhaseResult fitted = dual_coincidence_profile(sweep, chis).extracted;
      fringe = std::max({fringe, gap(fitted.phase, closed.phase), std::abs(fitted.visibility - closed.visibility)});
    }
  }
  b.at_most("dual setup phase and visibility equal the spin law", duality, 1e-10);
  b.at_most("the two spin channels sum to a constant", channels, 1e-10);
  b.at_most("coincidence fringe recovers the dual closed form", fringe, 1e-8);
}

}  // namespace

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Geometry: return "geometry";
    case Suite::Mixed: return "mixed";
    case Suite::TwoPhoton: return "two-photon";
    case Suite::GeometricPhase: return "geometric-phase";
    case Suite::Dual: return "dual";
    case Suite::All: return "all";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::Geometry, Suite::Mixed, Suite::TwoPhoton, Suite::GeometricPhase, Suite::Dual, Suite::All}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string PropertyCheck::line() const {
  char buf[64];
  if (at_least) {
    std::snprintf(buf, sizeof buf, ": observed %.3g (need >= %.3g) ", observed, tolerance);
  } else {
    std::snprintf(buf, sizeof buf, ": max dev %.2g (tol %.2g) ", observed, tolerance);
  }
  return "[" + suite + "] " + name + buf + (pass ? "PASS" : "FAIL");
}

std::vector<PropertyCheck> run_suite(Suite suite, double tolerance_scale,
                                     const std::function<void(const PropertyCheck&)>& on_check) {
  std::vector<PropertyCheck> checks;
  auto one = [&](Suite s, void (*body)(Battery&)) {
    if (suite != Suite::All && suite != s) return;
    Battery battery(std::string(to_string(s)), tolerance_scale, on_check, checks);
    try {
      body(battery);
    } catch (const std::exception& e) {
      battery.at_most(std::string("suite raised: ") + e.what(), INFINITY, 0.0);
    }
  };
  one(Suite::Geometry, geometry_suite);
  one(Suite::Mixed, mixed_suite);
  one(Suite::TwoPhoton, two_photon_suite);
  one(Suite::GeometricPhase, geometric_phase_suite);
  one(Suite::Dual, dual_suite);
  return checks;
}

bool all_passed(const std::vector<PropertyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

}  // namespace pancha::verify
