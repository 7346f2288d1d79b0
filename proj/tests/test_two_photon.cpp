#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pancha/two_photon.hpp"
#include "support.hpp"

using namespace pancha;

namespace {

const BlochPoint pole{0.0, 0.0};
const SphericalTriangle eighth{pole, {kPi / 2, 0.0}, {kPi / 2, kPi / 4}};  // solid angle pi/4
const SphericalTriangle octant{pole, {kPi / 2, 0.0}, {kPi / 2, kPi / 2}};
const SphericalTriangle still{pole, pole, pole};

SchmidtState at_vertices(double lambda, const LoopPair& loops) {
  return SchmidtState::aligned(lambda, bloch_to_state(loops.photon1.a), bloch_to_state(loops.photon2.a));
}

// Geodesic loop applied to a spinor with hand-rolled rotations.
oracle::Spinor transport(const SphericalTriangle& t, oracle::Spinor s) {
  const BlochPoint v[4] = {t.a, t.b, t.c, t.a};
  for (int k = 0; k < 3; ++k) {
    const oracle::Vec p = oracle::direction(v[k].theta, v[k].phi);
    const oracle::Vec q = oracle::direction(v[k + 1].theta, v[k + 1].phi);
    oracle::Vec n = oracle::cross(p, q);
    const double len = std::sqrt(oracle::dot(n, n));
    if (len < 1e-12) continue;
    for (auto& x : n) x /= len;
    s = oracle::rotate(n, std::atan2(len, oracle::dot(p, q)), s);
  }
  return s;
}

// <Pi_0| U1 x U2 |Pi_0> for Pi_0 = sqrt(l) |A A'> + sqrt(1 - l) |A_perp A'_perp>.
oracle::cd pair_overlap(double lambda, const LoopPair& loops) {
  const auto a = oracle::spinor(loops.photon1.a.theta, loops.photon1.a.phi);
  const auto b = oracle::spinor(loops.photon2.a.theta, loops.photon2.a.phi);
  const oracle::Spinor a_perp{-std::conj(a[1]), std::conj(a[0])};
  const oracle::Spinor b_perp{-std::conj(b[1]), std::conj(b[0])};
  const double c[2] = {std::sqrt(lambda), std::sqrt(1 - lambda)};
  const oracle::Spinor first[2] = {a, a_perp}, second[2] = {b, b_perp};
  oracle::cd sum = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      sum += c[i] * c[j] * oracle::braket(first[i], transport(loops.photon1, first[j])) *
             oracle::braket(second[i], transport(loops.photon2, second[j]));
    }
  }
  return sum;
}

SphericalTriangle random_triangle(Rng& rng) {
  for (;;) {
    SphericalTriangle t{state_to_bloch(rng.state(2)), state_to_bloch(rng.state(2)), state_to_bloch(rng.state(2))};
    const Vec3 a = t.a.direction(), b = t.b.direction(), c = t.c.direction();
    if (std::min({(a + b).norm(), (b + c).norm(), (c + a).norm()}) > 0.1 &&
        std::min({(a - b).norm(), (b - c).norm(), (c - a).norm()}) > 0.01) {
      return t;
    }
  }
}

}  // namespace

TEST_CASE("degree of entanglement") {
  CHECK(degree_of_entanglement(1.0) == 1.0);
  CHECK(degree_of_entanglement(0.5) == 0.0);
  CHECK(degree_of_entanglement(0.25) == 0.5);
  CHECK(degree_of_entanglement(SchmidtState::aligned(0.25, StateVector::basis(2, 0), StateVector::basis(2, 0))) ==
        0.5);
}

TEST_CASE("schmidt states are validated") {
  const StateVector up = StateVector::basis(2, 0);
  CHECK(code_of([&] { SchmidtState::aligned(1.5, up, up); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { SchmidtState(0.3, up, up, up, StateVector::basis(2, 1)); }) == ErrorCode::InvalidArgument);
  const StateVector v = SchmidtState::aligned(0.25, up, up).vector();
  CHECK(std::abs(v[0] - Complex(0.5)) < 1e-15);
  CHECK(v.amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("product loop phase") {
  CHECK(product_loop_phase(0, 0) == 0.0);
  CHECK(product_loop_phase(kPi / 2, kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(product_loop_phase(kPi / 2, -kPi / 2) == 0.0);
}

TEST_CASE("entangled closed form examples") {
  const PhaseResult quarter = entangled_phase_closed_form(0.25, kPi / 4, kPi / 4);
  CHECK(quarter.phase == doctest::Approx(0.4636476090008061));
  CHECK(quarter.visibility == doctest::Approx(0.7905694150420949));

  const PhaseResult maximal = entangled_phase_closed_form(0.5, kPi / 8, kPi / 8);
  CHECK(std::abs(maximal.phase) < 1e-15);
  CHECK(maximal.visibility == doctest::Approx(0.9238795325112867));

  // both Schmidt extremes are product states; they pick up opposite phases
  CHECK(entangled_phase_closed_form(1.0, 0.7, 0.4).phase == doctest::Approx(-0.55));
  CHECK(entangled_phase_closed_form(0.0, 0.7, 0.4).phase == doctest::Approx(0.55));
  CHECK(entangled_phase_closed_form(0.0, 0.7, 0.4).visibility == doctest::Approx(1.0));

  // maximal entanglement past a half turn: pi, not 0
  CHECK(entangled_phase_closed_form(0.5, 2.0, 2.0).phase == doctest::Approx(kPi));
  CHECK(code_of([] { entangled_phase_closed_form(0.5, kPi / 2, kPi / 2); }) == ErrorCode::OrthogonalStates);
}

TEST_CASE("simulated loop pair examples") {
  const LoopPair nothing{still, still};
  const PhaseResult id = simulate_loop_pair(at_vertices(0.3, nothing), nothing);
  CHECK(std::abs(id.phase) < 1e-15);
  CHECK(id.visibility == doctest::Approx(1.0));

  const LoopPair eighths{eighth, eighth};
  const PhaseResult q = simulate_loop_pair(at_vertices(0.25, eighths), eighths);
  CHECK(q.phase == doctest::Approx(0.4636476090008061).epsilon(1e-8));
  CHECK(q.visibility == doctest::Approx(0.7905694150420949).epsilon(1e-8));

  const LoopPair one{eighth, still};
  CHECK(simulate_loop_pair(at_vertices(1.0, one), one).phase == doctest::Approx(-kPi / 8));
  CHECK(product_loop_phase(kPi / 4, 0) == doctest::Approx(-kPi / 8));

  const SchmidtState misaligned =
      SchmidtState::aligned(0.3, bloch_to_state({1.0, 0.0}), bloch_to_state(eighth.a));
  CHECK(code_of([&] { simulate_loop_pair(misaligned, eighths); }) == ErrorCode::BasisMisaligned);
}

TEST_CASE("simulation matches hand-built four-dimensional arithmetic") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const double lambda = rng.uniform();
    const LoopPair loops{random_triangle(rng), random_triangle(rng)};
    const oracle::cd z = pair_overlap(lambda, loops);
    if (std::abs(z) < 1e-6) continue;
    const PhaseResult sim = simulate_loop_pair(at_vertices(lambda, loops), loops);
    CHECK(oracle::phase_gap(sim.phase, std::arg(z)) < 1e-10);
    CHECK(sim.visibility == doctest::Approx(std::abs(z)).epsilon(1e-10));
    const PhaseResult closed =
        entangled_phase_closed_form(lambda, solid_angle(loops.photon1), solid_angle(loops.photon2));
    CHECK(oracle::phase_gap(closed.phase, std::arg(z)) < 1e-8);
  }
}

TEST_CASE("nonlinearity ratio") {
  CHECK(nonlinearity_ratio(0.0, 0.5, 0.3) == doctest::Approx(1.0));
  CHECK(nonlinearity_ratio(0.5, 0.5, 0.3) == doctest::Approx(0.0));
  CHECK(nonlinearity_ratio(0.25, kPi / 4, kPi / 4) == doctest::Approx(0.5));
  CHECK(code_of([] { nonlinearity_ratio(0.3, 0.0, 0.0); }) == ErrorCode::UndefinedRatio);
}

TEST_CASE("ancilla reduction") {
  CHECK(ancilla_reduction_phase(1.0, kPi / 2) == doctest::Approx(-kPi / 4));
  CHECK(ancilla_reduction_phase(0.75, kPi / 2) == doctest::Approx(-0.4636476090008061));
  CHECK(ancilla_reduction_phase(0.5, 1.7) == 0.0);
  for (double lambda : {0.1, 0.3, 0.8}) {
    CHECK(ancilla_reduction_phase(lambda, 1.1) == doctest::Approx(entangled_phase_closed_form(lambda, 1.1, 0).phase));
  }
  CHECK(code_of([] { ancilla_reduction_phase(0.3, kTwoPi); }) == ErrorCode::BranchAmbiguity);
}

TEST_CASE("franson coincidence profile") {
  const LoopPair nothing{still, still};
  const std::vector<double> zero{0.0, kPi / 2, kPi};
  CHECK(franson_coincidence_profile(at_vertices(0.4, nothing), nothing, zero).samples[0].intensity ==
        doctest::Approx(4.0));

  const LoopPair halves{octant, octant};
  const auto flat = franson_coincidence_profile(at_vertices(0.5, halves), halves, uniform_chis(32));
  for (const auto& s : flat.samples) CHECK(s.intensity == doctest::Approx(2.0));
  CHECK_FALSE(flat.extracted.defined);

  const LoopPair eighths{eighth, eighth};
  const auto p = franson_coincidence_profile(at_vertices(0.25, eighths), eighths, uniform_chis(64));
  CHECK(p.extracted.phase == doctest::Approx(0.4636476090008061).epsilon(1e-8));
  CHECK(p.extracted.visibility == doctest::Approx(0.7905694150420949).epsilon(1e-8));
}
