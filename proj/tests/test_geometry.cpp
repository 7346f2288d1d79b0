#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pancha/geometry.hpp"
#include "support.hpp"

using namespace pancha;

namespace {

const SphericalTriangle octant{{0.0, 0.0}, {kPi / 2, 0.0}, {kPi / 2, kPi / 2}};

oracle::Vec odir(const BlochPoint& p) { return oracle::direction(p.theta, p.phi); }

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

TEST_CASE("bargmann invariant examples") {
  const StateVector a = bloch_to_state(octant.a);
  const StateVector b = bloch_to_state(octant.b);
  const StateVector c = bloch_to_state(octant.c);
  CHECK(bargmann_invariant(a, a, a) == 0.0);
  CHECK(bargmann_invariant(a, b, c) == doctest::Approx(-kPi / 4));
  CHECK(bargmann_invariant(c, b, a) == doctest::Approx(kPi / 4));

  // product <A|C><C|B><B|A> = (1 - i) / 4 by hand
  const oracle::Spinor sa = oracle::spinor(0, 0), sb = oracle::spinor(kPi / 2, 0), sc = oracle::spinor(kPi / 2, kPi / 2);
  const oracle::cd product = oracle::braket(sa, sc) * oracle::braket(sc, sb) * oracle::braket(sb, sa);
  CHECK(std::abs(product - oracle::cd(0.25, -0.25)) < 1e-15);

  CHECK(code_of([&] { bargmann_invariant(a, bloch_to_state({kPi, 0.0}), c); }) == ErrorCode::OrthogonalStates);
}

TEST_CASE("solid angle examples") {
  CHECK(solid_angle(octant) == doctest::Approx(kPi / 2));
  CHECK(solid_angle(octant.reversed()) == doctest::Approx(-kPi / 2));
  const SphericalTriangle equator{{kPi / 2, 0.0}, {kPi / 2, 1.0}, {kPi / 2, 2.0}};
  CHECK(std::abs(solid_angle(equator)) < 1e-15);
  CHECK(code_of([] { solid_angle({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}); }) == ErrorCode::DegenerateTriangle);
  CHECK(code_of([] { solid_angle({{0.0, 0.0}, {kPi, 0.0}, {1.0, 0.0}}); }) == ErrorCode::DegenerateTriangle);
}

TEST_CASE("solid angle agrees with Girard's spherical excess") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const SphericalTriangle t = random_triangle(rng);
    const double girard = oracle::girard_solid_angle(odir(t.a), odir(t.b), odir(t.c));
    CHECK(solid_angle(t) == doctest::Approx(girard).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("bargmann phase is minus half the spherical excess") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    const SphericalTriangle t = random_triangle(rng);
    const oracle::cd product = oracle::braket(oracle::spinor(t.a.theta, t.a.phi), oracle::spinor(t.c.theta, t.c.phi)) *
                               oracle::braket(oracle::spinor(t.c.theta, t.c.phi), oracle::spinor(t.b.theta, t.b.phi)) *
                               oracle::braket(oracle::spinor(t.b.theta, t.b.phi), oracle::spinor(t.a.theta, t.a.phi));
    const double girard = oracle::girard_solid_angle(odir(t.a), odir(t.b), odir(t.c));
    CHECK(oracle::phase_gap(std::arg(product), -girard / 2) < 1e-9);
  }
}

TEST_CASE("geodesic unitary") {
  CHECK((geodesic_unitary(octant.b, octant.b).matrix() - CMatrix::Identity(2, 2)).norm() < 1e-15);
  const UnitaryOperator g = geodesic_unitary(octant.a, octant.b);
  CHECK((g.matrix() - matrix_exponential_su2(Vec3::UnitY(), kPi / 2).matrix()).norm() < 1e-14);
  CHECK(code_of([] { geodesic_unitary({0.0, 0.0}, {kPi, 0.0}); }) == ErrorCode::AntipodalPoints);

  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const BlochPoint p = state_to_bloch(rng.state(2));
    const BlochPoint q = state_to_bloch(rng.state(2));
    if ((p.direction() + q.direction()).norm() < 1e-3) continue;
    const Vec3 landed = bloch_vector(geodesic_unitary(p, q) * bloch_to_state(p));
    CHECK((landed - q.direction()).norm() < 1e-10);
  }
}

TEST_CASE("loop holonomy") {
  const BlochPoint p{0.4, 1.1};
  CHECK((loop_holonomy({p, p, p}).matrix() - CMatrix::Identity(2, 2)).norm() < 1e-15);

  const StateVector a = bloch_to_state(octant.a);
  const UnitaryOperator loop = loop_holonomy(octant);
  CHECK(arg(inner_product(a, loop * a)) == doctest::Approx(-kPi / 4));
  CHECK(std::abs(std::abs(inner_product(a, loop * a)) - 1.0) < 1e-14);

  const UnitaryOperator back = loop_holonomy(octant.reversed());
  CHECK((back.matrix() - loop.adjoint().matrix()).norm() < 1e-14);
}

TEST_CASE("multi-vertex invariant") {
  Rng rng(34);
  const StateVector a = rng.state(2), b = rng.state(2), c = rng.state(2), d = rng.state(2);
  const std::vector<StateVector> quad{a, b, c, d};
  CHECK(oracle::phase_gap(multi_vertex_invariant(quad), bargmann_invariant(a, b, c) + bargmann_invariant(a, c, d)) <
        1e-12);
  const std::vector<StateVector> two{a, b};
  CHECK(std::abs(multi_vertex_invariant(two)) < 1e-15);
  const std::vector<StateVector> repeated{a, b, b, c};
  CHECK(oracle::phase_gap(multi_vertex_invariant(repeated), bargmann_invariant(a, b, c)) < 1e-14);
}

TEST_CASE("mixed bargmann examples") {
  const StateVector a = bloch_to_state(octant.a);
  const StateVector b = bloch_to_state(octant.b);
  const StateVector c = bloch_to_state(octant.c);
  const MixedTriple single{{1.0}, {a}, {b}, {c}, loop_holonomy(octant)};
  CHECK(oracle::phase_gap(mixed_bargmann(single), bargmann_invariant(a, b, c)) < 1e-14);

  const MixedTriple half = qubit_mixed_triple(0.5, octant);
  CHECK(mixed_bargmann(half) == doctest::Approx(-0.4636476090008061));
  CHECK(mixed_bargmann(qubit_mixed_triple(1.0, octant)) == doctest::Approx(-kPi / 4));

  CHECK(code_of([] { qubit_mixed_triple(0.0, octant); }) == ErrorCode::DegenerateSpectrum);
  MixedTriple bad = half;
  bad.weights = {0.7, 0.7};
  CHECK(code_of([&] { mixed_bargmann(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("mixed bargmann reverses with orientation") {
  Rng rng(35);
  for (int i = 0; i < 50; ++i) {
    const SphericalTriangle t = random_triangle(rng);
    const MixedTriple mt = qubit_mixed_triple(0.7, t);
    CHECK(oracle::phase_gap(mixed_bargmann(mt.reversed()), -mixed_bargmann(mt)) < 1e-12);
  }
}

TEST_CASE("mixed solid-angle law") {
  CHECK(mixed_solid_angle_phase(1.0, kPi / 2) == doctest::Approx(-kPi / 4));
  CHECK(mixed_solid_angle_phase(0.5, kPi / 2) == doctest::Approx(-0.4636476090008061));
  CHECK(mixed_solid_angle_phase(0.3, 0.0) == 0.0);
  // past a hemisphere the arctangent continues onto the next branch
  CHECK(mixed_solid_angle_phase(0.5, 3 * kPi / 2) == doctest::Approx(-(kPi - std::atan(0.5))));
  CHECK(code_of([] { mixed_solid_angle_phase(0.0, 1.0); }) == ErrorCode::DegenerateSpectrum);
  CHECK(code_of([] { mixed_solid_angle_phase(0.5, kTwoPi); }) == ErrorCode::BranchAmbiguity);
}

TEST_CASE("mixed bargmann follows the solid-angle law for random triangles") {
  Rng rng(36);
  for (int i = 0; i < 100; ++i) {
    const SphericalTriangle t = random_triangle(rng);
    const double r = rng.uniform(0.05, 1.0);
    const double omega = oracle::girard_solid_angle(odir(t.a), odir(t.b), odir(t.c));
    const double expected = std::atan2(-r * std::sin(omega / 2), std::cos(omega / 2));
    CHECK(oracle::phase_gap(mixed_bargmann(qubit_mixed_triple(r, t)), expected) < 1e-8);
  }
}
