#pragma once

// Bargmann invariants and their Bloch-sphere geometry: signed solid angles of
// geodesic triangles, geodesic transport unitaries, loop holonomies and the
// weighted mixed-state invariant.
//
// Orientation: a triangle's solid angle is positive when its vertices run
// counter-clockwise as seen from outside the sphere. With this convention the
// pure-state invariant of a qubit triangle is minus half its solid angle.

#include <span>
#include <vector>

#include "pancha/core.hpp"

namespace pancha {

struct SphericalTriangle {
  BlochPoint a;
  BlochPoint b;
  BlochPoint c;

  SphericalTriangle reversed() const { return {a, c, b}; }
};

// arg(<A|C><C|B><B|A>). Throws OrthogonalStates naming the overlap below 1e-9.
double bargmann_invariant(const StateVector& a, const StateVector& b, const StateVector& c);

// arg(<P0|Pn><Pn|Pn-1>...<P1|P0>) for states (P0, ..., Pn).
double multi_vertex_invariant(std::span<const StateVector> states);

// Signed solid angle in (-2 pi, 2 pi] from the unit vectors alone:
// tan(omega/2) = a.(b x c) / (1 + a.b + b.c + c.a).
// Throws DegenerateTriangle if two vertices coincide or are antipodal.
double solid_angle(const SphericalTriangle& t);

// Same formula on raw unit vectors without the degeneracy checks. Coincident
// vertices give 0; used for polygon fans where such terms are expected.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c);

// SU(2) rotation about p x q through the arc angle from p to q.
// p == q gives the identity; antipodal points throw AntipodalPoints.
UnitaryOperator geodesic_unitary(const BlochPoint& p, const BlochPoint& q);

// G(C->A) G(B->C) G(A->B). The vertex state |A> is an eigenvector with
// eigenvalue e^{-i omega/2}; its complement gets e^{+i omega/2}.
UnitaryOperator loop_holonomy(const SphericalTriangle& t);

// Eigenvalue data of a mixed state traced around a sequence of vertices.
// `bases[v][k]` is the k-th eigenvector at vertex v; `u` takes the first
// vertex's state to the last one along the sequence.
struct MixedSequence {
  std::vector<double> weights;
  std::vector<std::vector<StateVector>> bases;
  UnitaryOperator u = UnitaryOperator::identity(2);
};

// A three-vertex mixed sequence rho_A -> rho_B -> rho_C.
struct MixedTriple {
  std::vector<double> weights;
  std::vector<StateVector> basis_a;
  std::vector<StateVector> basis_b;
  std::vector<StateVector> basis_c;
  UnitaryOperator u = UnitaryOperator::identity(2);

  MixedSequence as_sequence() const { return {weights, {basis_a, basis_b, basis_c}, u}; }

  // Swaps B and C and replaces U by its adjoint.
  MixedTriple reversed() const { return {weights, basis_a, basis_c, basis_b, u.adjoint()}; }
};

// arg sum_k w_k |<A_k|U|A_k>| e^{i Delta(A_k, B_k, C_k)}.
// Throws DegenerateSpectrum if two weights coincide (eigenbases are then not
// unique), InvalidArgument for non-orthonormal bases or bad weights, and
// OrthogonalStates when a term's overlap or the sum vanishes.
double mixed_bargmann(const MixedTriple& mt);

// The same weighted invariant for any number of vertices.
double mixed_multi_vertex_invariant(const MixedSequence& seq);

// -arctan(r tan(omega/2)), continued through omega = +-pi so it stays
// continuous on (-2 pi, 2 pi); this is arg(cos(omega/2) - i r sin(omega/2)).
// Throws DegenerateSpectrum for r == 0 and BranchAmbiguity for |omega| at or
// beyond 2 pi (within 1e-9), where winding is not defined.
double mixed_solid_angle_phase(double r, double omega);

// Qubit mixed triple for a state of Bloch radius r at vertex A carried along
// the geodesics A -> B -> C; U = G(B->C) G(A->B).
MixedTriple qubit_mixed_triple(double r, const SphericalTriangle& t);

}  // namespace pancha
