#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pancha/geometric_phase.hpp"
#include "support.hpp"

using namespace pancha;

namespace {

std::vector<double> time_grid(std::size_t n, double tau) {
  std::vector<double> t(n + 1);
  for (std::size_t j = 0; j <= n; ++j) t[j] = tau * static_cast<double>(j) / static_cast<double>(n);
  return t;
}

DiscretePath gauge_path(std::size_t n, double rate) {
  const StateVector a = random_state(17, 2);
  auto t = time_grid(n, 1.0);
  std::vector<StateVector> s;
  for (double tj : t) s.push_back(a.rephased(rate * tj));
  return DiscretePath(t, s);
}

// Closed loop along the three great-circle edges, n samples per edge.
DiscretePath geodesic_loop(const std::vector<BlochPoint>& corners, std::size_t n, bool close = true) {
  std::vector<StateVector> s;
  const std::size_t edges = close ? corners.size() : corners.size() - 1;
  for (std::size_t e = 0; e < edges; ++e) {
    const Vec3 p = corners[e].direction();
    const Vec3 q = corners[(e + 1) % corners.size()].direction();
    const double angle = std::acos(std::clamp(p.dot(q), -1.0, 1.0));
    const Vec3 axis = p.cross(q).normalized();
    for (std::size_t j = 0; j < n; ++j) {
      const double a = angle * static_cast<double>(j) / static_cast<double>(n);
      const Vec3 v = p * std::cos(a) + axis.cross(p) * std::sin(a);
      s.push_back(bloch_to_state(BlochPoint::from_direction(v)));
    }
  }
  s.push_back(bloch_to_state(close ? corners.front() : corners.back()));
  return DiscretePath(time_grid(s.size() - 1, 1.0), s);
}

const std::vector<BlochPoint> octant{{0.0, 0.0}, {kPi / 2, 0.0}, {kPi / 2, kPi / 2}};

}  // namespace

TEST_CASE("discrete paths are validated") {
  const StateVector a = StateVector::basis(2, 0);
  CHECK(code_of([&] { DiscretePath({0.0}, {a}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { DiscretePath({0.0, 0.0}, {a, a}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { DiscretePath({0.0, 1.0}, {a, StateVector::basis(3, 0)}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("chain phase examples") {
  const StateVector a = random_state(3, 2);
  CHECK(std::abs(chain_phase(DiscretePath({0, 1, 2}, {a, a, a}))) < 1e-15);
  CHECK(std::abs(chain_phase(gauge_path(100, 2.5))) < 1e-13);
  CHECK(std::abs(chain_phase(geodesic_loop(octant, 3334)) + kPi / 4) < 1e-3);

  const StateVector up = StateVector::basis(2, 0), down = StateVector::basis(2, 1);
  CHECK(code_of([&] { chain_phase(DiscretePath({0, 1, 2}, {up, down, up})); }) == ErrorCode::OrthogonalStates);
  const StateVector mid = bloch_to_state({kPi / 2, 0});
  CHECK(code_of([&] { chain_phase(DiscretePath({0, 1, 2}, {up, mid, down})); }) ==
        ErrorCode::VanishingEndpointOverlap);
}

TEST_CASE("chain phase of a sampled geodesic polygon converges to the Bargmann value") {
  const double coarse = std::abs(chain_phase(geodesic_loop(octant, 50)) + kPi / 4);
  const double fine = std::abs(chain_phase(geodesic_loop(octant, 100)) + kPi / 4);
  // the polygon is exact along geodesics: the chain of a geodesic edge
  // contributes nothing, whatever the sampling
  CHECK(coarse < 1e-12);
  CHECK(fine < 1e-12);
}

TEST_CASE("parallel lifts") {
  CHECK_FALSE(is_parallel_lift(gauge_path(100, 1.0), 1e-10));
  const DiscretePath precessing = precession_path({kPi / 3, kPi / 2}, 256);
  CHECK_FALSE(is_parallel_lift(precessing, 1e-10));

  const DiscretePath lifted = make_parallel_lift(precessing);
  CHECK(is_parallel_lift(lifted, 1e-10));
  CHECK(oracle::phase_gap(arg(inner_product(lifted.states().front(), lifted.states().back())),
                          chain_phase(precessing)) < 1e-10);
  const DiscretePath again = make_parallel_lift(lifted);
  for (std::size_t j = 0; j < lifted.size(); ++j) {
    CHECK((again.states()[j].amplitudes() - lifted.states()[j].amplitudes()).norm() < 1e-12);
  }

  const DiscretePath flat = make_parallel_lift(gauge_path(50, 1.0));
  for (const auto& s : flat.states()) {
    CHECK((s.amplitudes() - flat.states().front().amplitudes()).norm() < 1e-12);
  }

  const DiscretePath fine = make_parallel_lift(precession_path({kPi / 3, kPi / 2}, 10000));
  CHECK(std::abs(arg(inner_product(fine.states().front(), fine.states().back())) + 0.07094852730208184) < 1e-3);
}

TEST_CASE("dynamical phase") {
  CHECK(std::abs(dynamical_phase(make_parallel_lift(gauge_path(100, 1.0)))) < 1e-10);
  CHECK(dynamical_phase(gauge_path(1000, 0.3)) == doctest::Approx(0.3).epsilon(1e-6));
  for (double theta : {0.3, kPi / 3, 2.0}) {
    const double tau = 1.2;
    CHECK(dynamical_phase(precession_path({theta, tau}, 512)) == doctest::Approx(-tau / 2 * std::cos(theta)));
  }
}

TEST_CASE("auxiliary cancellation") {
  const DiscretePath lifted = make_parallel_lift(precession_path({1.0, 2.0}, 300));
  CHECK(oracle::phase_gap(pancharatnam_vs_auxiliary(DiscretePath(lifted.times(), lifted.states())),
                          arg(inner_product(lifted.states().front(), lifted.states().back()))) < 1e-10);
  CHECK(std::abs(pancharatnam_vs_auxiliary(gauge_path(2000, 0.8))) < 1e-6);

  const DiscretePath path = precession_path({kPi / 3, kPi / 2}, 4096);
  CHECK(pancharatnam_vs_auxiliary(path) == doctest::Approx(-0.07094852730208184).epsilon(1e-9));
  CHECK(oracle::phase_gap(pancharatnam_vs_auxiliary(path), chain_phase(path)) < 5.0 / 4096);
}

TEST_CASE("precession closed form") {
  for (double phi : {-2.0, 0.5, 3.0}) CHECK(precession_phase_closed_form({0.0, phi}) == doctest::Approx(0.0));
  CHECK(std::abs(precession_phase_closed_form({kPi / 2, 1.3})) < 1e-15);
  CHECK(precession_phase_closed_form({kPi / 3, kPi / 2}) == doctest::Approx(-0.07094852730208184).epsilon(1e-14));
  CHECK(code_of([] { precession_phase_closed_form({kPi / 3, kPi}); }) == ErrorCode::BranchAmbiguity);
}

TEST_CASE("closed form agrees with explicit time stepping") {
  for (double theta : {kPi / 6, kPi / 3, 2 * kPi / 3, 2.8}) {
    for (double phi : {0.4, kPi / 2, 2.5}) {
      const double stepped = oracle::precession_by_stepping(theta, phi, 4000);
      CHECK(oracle::phase_gap(precession_phase_closed_form({theta, phi}), stepped) < 1e-9);
      CHECK(oracle::phase_gap(auxiliary_simulated_phase({theta, phi}), stepped) < 1e-9);
    }
  }
}

TEST_CASE("hamiltonians") {
  CHECK(auxiliary_hamiltonian({kPi / 2, 1.0}).norm() < 1e-16);
  CHECK((auxiliary_hamiltonian({0.0, 1.0}) - 0.5 * pauli_z()).norm() < 1e-16);
  CHECK((auxiliary_hamiltonian({kPi / 3, 1.0}) - 0.25 * pauli_z()).norm() < 1e-15);
  const CMatrix h = precession_hamiltonian(kPi / 3);
  CHECK((h - h.adjoint()).norm() == 0.0);
  CHECK(auxiliary_simulated_phase({kPi / 3, kPi / 2}) == doctest::Approx(-0.07094852730208184).epsilon(1e-9));
}

TEST_CASE("geodesic closure solid angle") {
  CHECK(geodesic_closure_solid_angle(geodesic_loop(octant, 200)) == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(std::abs(geodesic_closure_solid_angle(geodesic_loop({{0.3, 0.2}, {1.2, 1.0}}, 100, false))) < 1e-12);
  const DiscretePath precessing = precession_path({kPi / 3, kPi / 2}, 10000);
  CHECK(geodesic_closure_solid_angle(precessing) == doctest::Approx(0.14189705460416369).epsilon(1e-4));

  const std::vector<BlochPoint> half{{0.0, 0.0}, {kPi / 2, 0.0}, {kPi, 0.0}};
  CHECK(code_of([&] { geodesic_closure_solid_angle(geodesic_loop(half, 50, false)); }) ==
        ErrorCode::AntipodalEndpoints);
}

TEST_CASE("mixed noncyclic phase") {
  CHECK(mixed_noncyclic_phase({kPi / 3, kPi / 2, 1.0}) == doctest::Approx(-0.07094852730208184));
  CHECK(mixed_noncyclic_phase({kPi / 3, kPi / 2, 0.5}) == doctest::Approx(-0.035518961523806264).epsilon(1e-12));
  CHECK(std::abs(mixed_noncyclic_phase({kPi / 2, 1.0, 0.3})) < 1e-15);
  CHECK(code_of([] { mixed_noncyclic_phase({1.0, 1.0, 0.0}); }) == ErrorCode::DegenerateSpectrum);

  // direct trace with hand-built matrices
  for (double r : {0.2, 0.5, 0.9}) {
    const double theta = 2 * kPi / 3, phi = 3 * kPi / 4;
    const UnitaryOperator u = evolution_operator(precession_hamiltonian(theta), phi);
    const UnitaryOperator aux = evolution_operator(auxiliary_hamiltonian({theta, phi}), phi);
    const CMatrix m = aux.adjoint().matrix() * u.matrix();
    const Complex tr = (1 + r) / 2 * m(0, 0) + (1 - r) / 2 * m(1, 1);
    CHECK(oracle::phase_gap(mixed_noncyclic_phase({theta, phi, r}), std::arg(tr)) < 1e-8);
  }
}

TEST_CASE("precession path") {
  CHECK(code_of([] { precession_path({1.0, 0.0}, 16); }) == ErrorCode::InvalidArgument);
  const DiscretePath p = precession_path({1.0, 2.0}, 16);
  CHECK(p.size() == 17);
  CHECK(p.has_generators());
  CHECK(p.times().back() == doctest::Approx(2.0));
}
