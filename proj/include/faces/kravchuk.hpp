#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace faces {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest order whose entries (bounded by the central binomial coefficient)
/// still fit in a signed 64-bit integer.
inline constexpr int kMaxKravchukOrder = 60;

/// Exact binomial coefficient C(n, k); zero outside 0 <= k <= n.
std::int64_t binomial(int n, int k);

/// Integer transform matrix of order l with entries
/// M[j][k] = e_k(-1 repeated j times, +1 repeated l-j times),
/// the degree-k elementary symmetric polynomial evaluated on +-1.
/// Satisfies M^2 = 2^l I, M[0][k] = C(l,k) and M[j][0] = 1.
class KravchukMatrix {
public:
  explicit KravchukMatrix(int order);

  int order() const { return order_; }
  std::int64_t operator()(int j, int k) const { return entries_(j, k); }
  const IntMatrix& entries() const { return entries_; }
  /// Entry with the antipode sign attached: (-1)^{jk} M[j][k].
  std::int64_t signed_entry(int j, int k) const;

private:
  int order_;
  IntMatrix entries_;
};

/// Permutation of {0..l} (l even) that fixes every even index and sends an
/// odd index j to l - j. Self-inverse.
class AntipodePermutation {
public:
  explicit AntipodePermutation(int order);

  int order() const { return order_; }
  int operator()(int j) const { return mapping_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& mapping() const { return mapping_; }

private:
  int order_;
  std::vector<int> mapping_;
};

/// Diagonal of binomial coefficients C(l, 0), ..., C(l, l).
class BinomialDiagonal {
public:
  explicit BinomialDiagonal(int order);

  int order() const { return order_; }
  std::int64_t operator()(int k) const { return diag_[static_cast<std::size_t>(k)]; }
  const std::vector<std::int64_t>& diagonal() const { return diag_; }

private:
  int order_;
  std::vector<std::int64_t> diag_;
};

KravchukMatrix kravchuk_matrix(int order);
AntipodePermutation antipode(int order);
BinomialDiagonal binom_diag(int order);

/// Probability distribution over Majorana degrees 0..2n.
class FermionicDistribution {
public:
  FermionicDistribution(int modes, Eigen::VectorXd q);

  int modes() const { return modes_; }
  const Eigen::VectorXd& q() const { return q_; }
  double operator[](int k) const { return q_[k]; }

private:
  int modes_;
  Eigen::VectorXd q_;
};

/// Per-degree channel eigenvalues xi_0..xi_2n of a fermionically twirled
/// channel; xi_0 = 1 for anything derived from a distribution.
class EigenvalueVector {
public:
  EigenvalueVector(int modes, Eigen::VectorXd xi);

  int modes() const { return modes_; }
  const Eigen::VectorXd& xi() const { return xi_; }
  double operator[](int k) const { return xi_[k]; }

private:
  int modes_;
  Eigen::VectorXd xi_;
};

enum class CircuitKind { Z, X };

const char* to_string(CircuitKind kind);
CircuitKind circuit_kind_from_string(const std::string& s);

/// Hamming-weight-resolved measurement distribution. Z-type records weights
/// 0..n of an n-bit readout; x-type records a sign (the y-basis outcome on
/// the first qubit) together with weights 0..n-1 of the remaining bits.
/// P+ and P- are stored separately; half-sum and half-difference are
/// computed on demand.
class BornDistribution {
public:
  static BornDistribution z_type(int qubits, Eigen::VectorXd p0);
  static BornDistribution x_type(int qubits, Eigen::VectorXd p_plus, Eigen::VectorXd p_minus);

  CircuitKind kind() const { return kind_; }
  int qubits() const { return qubits_; }

  const Eigen::VectorXd& p0() const;
  const Eigen::VectorXd& p_plus() const;
  const Eigen::VectorXd& p_minus() const;
  Eigen::VectorXd half_sum() const;
  Eigen::VectorXd half_diff() const;

  /// Number of scalar outcome bins (z: n+1, x: 2n).
  int bin_count() const;
  /// Flat view in canonical bin order (z: weights ascending; x: all "+"
  /// weights ascending, then all "-" weights ascending).
  Eigen::VectorXd flat() const;
  static BornDistribution from_flat(CircuitKind kind, int qubits, const Eigen::VectorXd& flat);

  double total_mass() const;

private:
  BornDistribution(CircuitKind kind, int qubits);

  CircuitKind kind_;
  int qubits_;
  Eigen::VectorXd p0_;
  Eigen::VectorXd p_plus_;
  Eigen::VectorXd p_minus_;
};

/// xi = (s . M . d^-1) . q for a distribution over degrees 0..2n.
EigenvalueVector probs_to_eigs(const FermionicDistribution& dist);

/// Raw output of the inverse transform q = 4^-n (d . M . s) . xi, kept
/// unclipped so that small negative entries stay visible to callers.
struct ProbabilityReconstruction {
  int modes = 0;
  Eigen::VectorXd q;
  double min_entry = 0.0;

  bool physical(double tol = 1e-10) const { return min_entry >= -tol; }
  /// Throws if an entry is below -tol; entries in (-tol, 0) are zeroed.
  FermionicDistribution to_distribution(double tol = 1e-10) const;
};

ProbabilityReconstruction eigs_to_probs(const EigenvalueVector& eigs);

/// Forward Born-rule relations for an ensemble with circuit eigenvalues
/// lambda_0..lambda_2n: z-type uses the even part against M of order n,
/// x-type uses the even-except-top and odd parts against M of order n-1.
BornDistribution circuit_eigs_to_born(const Eigen::VectorXd& lambda, CircuitKind kind, int qubits);

/// Inverse of circuit_eigs_to_born on its image. Returns a vector over
/// degrees 0..2n with NaN at degrees the kind does not determine
/// (z: odd degrees; x: degree 2n). Out-of-image inputs pass through and may
/// produce values outside [0, 1].
Eigen::VectorXd born_to_circuit_eigs(const BornDistribution& p);

}  // namespace faces
