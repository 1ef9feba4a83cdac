#pragma once

#include <Eigen/Dense>

#include <vector>

#include "faces/majorana.hpp"
#include "faces/rng.hpp"

namespace faces {

/// Orthogonal single-particle transition matrix R of a fermionic linear
/// optical element: conjugation maps gamma_mu to sum_nu R[mu][nu] gamma_nu.
class SingleParticleTransform {
public:
  SingleParticleTransform(int modes, Eigen::MatrixXd r);
  static SingleParticleTransform identity(int modes);

  int modes() const { return modes_; }
  const Eigen::MatrixXd& r() const { return r_; }
  double operator()(int mu, int nu) const { return r_(mu - 1, nu - 1); }

  double orthogonality_defect() const;
  double determinant() const;

private:
  int modes_;
  Eigen::MatrixXd r_;
};

/// Transition matrix of one gate on 2n modes. A rotation about Z by theta
/// rotates the Majorana plane (2j-1, 2j) by 2 theta; the hop gate mixes the
/// four modes of its qubit pair through a fixed orthogonal block.
SingleParticleTransform gate_transition_matrix(const GateInstance& gate, int modes);

/// Transition matrix of applying `first`, then `then`. Orthogonality is
/// re-established by a QR polish once drift exceeds 1e-9.
SingleParticleTransform compose_transforms(const SingleParticleTransform& first,
                                           const SingleParticleTransform& then);

/// Transition matrix of a gate sequence applied in order.
SingleParticleTransform transition_of_sequence(const std::vector<GateInstance>& gates, int modes);

/// All k-element subsets of {1..universe} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int universe, int k);

/// Coefficients det(R[alpha, beta]) of the degree-|alpha| compound action,
/// ordered like subsets_of_size(2n, |alpha|).
Eigen::VectorXd compound_action(const SingleParticleTransform& r, const MajoranaMonomial& alpha);

/// Determinant of the submatrix with the given 1-based rows and columns.
double submatrix_determinant(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                             const std::vector<int>& cols);

/// Gate sequence (in application order) realizing the reference circuit
/// that maps the all-plus stabilizer data onto the gamma_1 projector state.
std::vector<GateInstance> u_plus_gates(int qubits, int bins);

/// Composed transition matrix of u_plus_gates.
SingleParticleTransform u_plus_transform(int qubits, int bins);

/// Haar-distributed element of O(2n): Gaussian matrix, QR with the R-factor
/// sign fixed positive, then the canonical mode-1 reflection with
/// probability 1/2.
SingleParticleTransform haar_orthogonal(int modes, Rng& rng);

/// Transition matrix of the canonical reflection (conjugation by gamma_1):
/// +1 on mode 1, -1 elsewhere.
Eigen::MatrixXd canonical_reflection(int modes);

/// Rotation by `angle` in the adjacent Majorana plane (mode, mode+1).
struct MajoranaRotation {
  int mode = 1;  // 1-based; the plane is (mode, mode+1)
  double angle = 0.0;
};

/// R written as an optional leading canonical reflection followed by
/// adjacent-plane rotations, in application order.
struct GivensDecomposition {
  int modes = 0;
  bool leading_reflection = false;
  std::vector<MajoranaRotation> rotations;

  SingleParticleTransform compose() const;
};

GivensDecomposition givens_decompose(const SingleParticleTransform& r);

/// Transition matrix of a single adjacent-plane rotation.
Eigen::MatrixXd rotation_transition(int modes, const MajoranaRotation& rot);

}  // namespace faces
