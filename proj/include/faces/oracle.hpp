#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <vector>

#include "faces/kravchuk.hpp"
#include "faces/majorana.hpp"
#include "faces/noise.hpp"
#include "faces/rng.hpp"
#include "faces/transforms.hpp"

/// Exponential-cost dense reference simulator. Everything in this namespace
/// trades speed for directness: states are full density matrices, channels
/// are full Pauli-basis transfer matrices, and twirling is a Monte-Carlo
/// average over explicitly compiled group elements.
namespace faces::oracle {

inline constexpr int kMaxDenseQubits = 4;
inline constexpr int kMaxSuperopQubits = 3;
/// Bare operators (no states) stay cheap a little longer; the exhaustive
/// degree-classification check runs at five qubits.
inline constexpr int kMaxDensePauliQubits = 5;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Dense operator of a Pauli string, phase included.
CMatrix dense_pauli(const PauliString& p);
/// Dense Majorana operator gamma_mu on 2n modes.
CMatrix dense_gamma(int modes, int mu);
/// Dense ordered product gamma_alpha.
CMatrix dense_monomial(const MajoranaMonomial& alpha);

/// Dense unitary of a gate: exp(i theta Z_j) or the hop gate G(H,H) with
/// the Hadamard acting on both parity blocks of its qubit pair.
CMatrix dense_gate(const GateInstance& gate, int qubits);

/// Dense unitary exp(angle/2 gamma_mu gamma_mu+1) of an adjacent-plane
/// rotation.
CMatrix dense_rotation_unitary(int qubits, const MajoranaRotation& rot);

/// Dense unitary realizing a Givens-decomposed transition matrix (leading
/// reflection compiled as gamma_1).
CMatrix dense_flo_unitary(int qubits, const GivensDecomposition& dec);

/// Density matrix on up to kMaxDenseQubits qubits.
class DenseState {
public:
  DenseState(int qubits, CMatrix rho);
  static DenseState computational_zero(int qubits);
  static DenseState all_plus(int qubits);

  int qubits() const { return qubits_; }
  const CMatrix& rho() const { return rho_; }

  void apply_unitary(const CMatrix& u);
  void apply_pauli_channel(const PauliChannel& channel);

  double trace_defect() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;

private:
  int qubits_;
  CMatrix rho_;
};

/// Superoperator stored as its Pauli transfer matrix R with
/// E(sigma_y) = sum_x R[x][y] sigma_x; real for Hermiticity-preserving maps.
class DenseSuperop {
public:
  DenseSuperop(int qubits, Eigen::MatrixXd ptm);
  static DenseSuperop identity(int qubits);
  static DenseSuperop from_unitary(int qubits, const CMatrix& u);
  static DenseSuperop from_pauli_channel(const PauliChannel& channel);

  int qubits() const { return qubits_; }
  const Eigen::MatrixXd& ptm() const { return ptm_; }

  /// Composition: apply this map, then `next`.
  DenseSuperop then(const DenseSuperop& next) const;

  bool trace_preserving(double tol = 1e-10) const;
  /// Smallest eigenvalue of the Choi operator; nonnegative (up to
  /// tolerance) exactly when the map is completely positive.
  double choi_min_eigenvalue() const;

private:
  int qubits_;
  Eigen::MatrixXd ptm_;
};

/// Monte-Carlo average of U . E . U^dagger over `samples` Haar draws from
/// the free-fermion group, each compiled through the Givens path.
DenseSuperop mc_flo_twirl(const DenseSuperop& channel, int samples, Rng& rng);

struct TwirlExtraction {
  Eigen::VectorXd xi;        // per-degree averaged diagonal eigenvalues
  Eigen::VectorXd q;         // reconstructed degree distribution (unclipped)
  double degree_residual;    // max spread of diagonal entries within a degree
};

/// Read the per-degree eigenvalues off an (approximately) twirled
/// superoperator and invert them into fermionic error probabilities.
/// Throws when the in-degree spread exceeds max_residual.
TwirlExtraction extract_fermionic_probs(
    const DenseSuperop& twirled,
    double max_residual = std::numeric_limits<double>::infinity());

/// Reference Born distribution of a noisy circuit: ideal input state, then
/// per gate an MC-twirled noise channel followed by the ideal gate, then an
/// ideal measurement in the kind's basis, marginalized onto Hamming-weight
/// bins. Noise channels are looked up in the model and must carry their
/// Pauli-channel truth; twirl samples are drawn fresh per gate position.
BornDistribution oracle_born(CircuitKind kind, const std::vector<GateInstance>& gates,
                             int qubits, const GateNoiseModel& noise, int twirl_samples,
                             Rng& rng);

}  // namespace faces::oracle
