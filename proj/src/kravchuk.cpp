#include "faces/kravchuk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace faces {

namespace {

constexpr double kMassTolerance = 1e-12;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  std::int64_t value = 1;
  for (int i = 1; i <= k; ++i) {
    // Exact at every step: value * (n - k + i) is divisible by i.
    value = value * (n - k + i) / i;
  }
  return value;
}

KravchukMatrix::KravchukMatrix(int order) : order_(order) {
  require(order >= 0, "Kravchuk order must be nonnegative");
  require(order <= kMaxKravchukOrder,
          "Kravchuk order " + std::to_string(order) + " exceeds 64-bit capacity (max " +
              std::to_string(kMaxKravchukOrder) + ")");
  entries_.resize(order + 1, order + 1);
  for (int j = 0; j <= order; ++j) {
    for (int k = 0; k <= order; ++k) {
      // Signed binomial closed form: sum over the number m of picks from
      // the -1 block. Partial sums stay within C(order, k), so this never
      // overflows for orders within capacity.
      std::int64_t value = 0;
      const int m_lo = std::max(0, k + j - order);
      const int m_hi = std::min(j, k);
      for (int m = m_lo; m <= m_hi; ++m) {
        const std::int64_t term = binomial(order - j, k - m) * binomial(j, m);
        value += (m % 2 == 0) ? term : -term;
      }
      entries_(j, k) = value;
    }
  }
}

std::int64_t KravchukMatrix::signed_entry(int j, int k) const {
  const std::int64_t value = entries_(j, k);
  return (j % 2 == 1 && k % 2 == 1) ? -value : value;
}

AntipodePermutation::AntipodePermutation(int order) : order_(order) {
  require(order >= 0, "antipode order must be nonnegative");
  require(order % 2 == 0, "antipode is defined for even orders only");
  mapping_.resize(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    mapping_[static_cast<std::size_t>(j)] = (j % 2 == 0) ? j : order - j;
  }
}

BinomialDiagonal::BinomialDiagonal(int order) : order_(order) {
  require(order >= 0, "binomial diagonal order must be nonnegative");
  require(order <= kMaxKravchukOrder, "binomial diagonal order exceeds 64-bit capacity");
  diag_.resize(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    diag_[static_cast<std::size_t>(k)] = binomial(order, k);
  }
}

KravchukMatrix kravchuk_matrix(int order) { return KravchukMatrix(order); }
AntipodePermutation antipode(int order) { return AntipodePermutation(order); }
BinomialDiagonal binom_diag(int order) { return BinomialDiagonal(order); }

FermionicDistribution::FermionicDistribution(int modes, Eigen::VectorXd q)
    : modes_(modes), q_(std::move(q)) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  require(q_.size() == modes + 1, "distribution must have one entry per degree 0..2n");
  require(q_.minCoeff() >= 0.0, "fermionic error probabilities must be nonnegative");
  require(std::abs(q_.sum() - 1.0) <= kMassTolerance,
          "fermionic error probabilities must sum to 1");
}

EigenvalueVector::EigenvalueVector(int modes, Eigen::VectorXd xi)
    : modes_(modes), xi_(std::move(xi)) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  require(xi_.size() == modes + 1, "eigenvalue vector must have one entry per degree 0..2n");
}

const char* to_string(CircuitKind kind) { return kind == CircuitKind::Z ? "z" : "x"; }

CircuitKind circuit_kind_from_string(const std::string& s) {
  if (s == "z") return CircuitKind::Z;
  if (s == "x") return CircuitKind::X;
  throw std::invalid_argument("unknown circuit kind '" + s + "'");
}

BornDistribution::BornDistribution(CircuitKind kind, int qubits) : kind_(kind), qubits_(qubits) {
  require(qubits >= 1, "qubit count must be positive");
}

BornDistribution BornDistribution::z_type(int qubits, Eigen::VectorXd p0) {
  BornDistribution dist(CircuitKind::Z, qubits);
  require(p0.size() == qubits + 1, "z-type distribution needs weights 0..n");
  dist.p0_ = std::move(p0);
  return dist;
}

BornDistribution BornDistribution::x_type(int qubits, Eigen::VectorXd p_plus,
                                          Eigen::VectorXd p_minus) {
  BornDistribution dist(CircuitKind::X, qubits);
  require(p_plus.size() == qubits && p_minus.size() == qubits,
          "x-type distribution needs weights 0..n-1 for each sign");
  dist.p_plus_ = std::move(p_plus);
  dist.p_minus_ = std::move(p_minus);
  return dist;
}

const Eigen::VectorXd& BornDistribution::p0() const {
  require(kind_ == CircuitKind::Z, "p0 is defined for z-type distributions");
  return p0_;
}

const Eigen::VectorXd& BornDistribution::p_plus() const {
  require(kind_ == CircuitKind::X, "p_plus is defined for x-type distributions");
  return p_plus_;
}

const Eigen::VectorXd& BornDistribution::p_minus() const {
  require(kind_ == CircuitKind::X, "p_minus is defined for x-type distributions");
  return p_minus_;
}

Eigen::VectorXd BornDistribution::half_sum() const { return 0.5 * (p_plus() + p_minus_); }

Eigen::VectorXd BornDistribution::half_diff() const { return 0.5 * (p_plus() - p_minus_); }

int BornDistribution::bin_count() const {
  return kind_ == CircuitKind::Z ? qubits_ + 1 : 2 * qubits_;
}

Eigen::VectorXd BornDistribution::flat() const {
  if (kind_ == CircuitKind::Z) return p0_;
  Eigen::VectorXd out(2 * qubits_);
  out.head(qubits_) = p_plus_;
  out.tail(qubits_) = p_minus_;
  return out;
}

BornDistribution BornDistribution::from_flat(CircuitKind kind, int qubits,
                                             const Eigen::VectorXd& flat) {
  if (kind == CircuitKind::Z) {
    require(flat.size() == qubits + 1, "flat z-type vector has wrong length");
    return z_type(qubits, flat);
  }
  require(flat.size() == 2 * qubits, "flat x-type vector has wrong length");
  return x_type(qubits, flat.head(qubits), flat.tail(qubits));
}

double BornDistribution::total_mass() const { return flat().sum(); }

EigenvalueVector probs_to_eigs(const FermionicDistribution& dist) {
  const int modes = dist.modes();
  const KravchukMatrix m(modes);
  const BinomialDiagonal d(modes);
  Eigen::VectorXd xi(modes + 1);
  for (int j = 0; j <= modes; ++j) {
    double acc = 0.0;
    for (int k = 0; k <= modes; ++k) {
      acc += static_cast<double>(m.signed_entry(j, k)) * dist[k] / static_cast<double>(d(k));
    }
    xi[j] = acc;
  }
  return EigenvalueVector(modes, std::move(xi));
}

ProbabilityReconstruction eigs_to_probs(const EigenvalueVector& eigs) {
  const int modes = eigs.modes();
  require(std::abs(eigs[0] - 1.0) <= 1e-9, "eigenvalue vector must have xi_0 = 1");
  const KravchukMatrix m(modes);
  const BinomialDiagonal d(modes);
  const double scale = std::pow(2.0, -modes);
  ProbabilityReconstruction rec;
  rec.modes = modes;
  rec.q.resize(modes + 1);
  for (int j = 0; j <= modes; ++j) {
    double acc = 0.0;
    for (int k = 0; k <= modes; ++k) {
      // d.M.s has the same signed entries as s.M by the commutation rule,
      // scaled by the row binomial.
      acc += static_cast<double>(m.signed_entry(j, k)) * eigs[k];
    }
    rec.q[j] = scale * static_cast<double>(d(j)) * acc;
  }
  rec.min_entry = rec.q.minCoeff();
  return rec;
}

FermionicDistribution ProbabilityReconstruction::to_distribution(double tol) const {
  if (!physical(tol)) {
    throw std::domain_error("reconstructed probabilities are non-physical (min entry " +
                            std::to_string(min_entry) + ")");
  }
  Eigen::VectorXd clipped = q.cwiseMax(0.0);
  return FermionicDistribution(modes, std::move(clipped));
}

BornDistribution circuit_eigs_to_born(const Eigen::VectorXd& lambda, CircuitKind kind,
                                      int qubits) {
  require(qubits >= 1, "qubit count must be positive");
  require(lambda.size() == 2 * qubits + 1,
          "circuit eigenvalue vector must cover degrees 0..2n");
  const double scale = std::pow(2.0, -qubits);
  if (kind == CircuitKind::Z) {
    const KravchukMatrix m(qubits);
    const BinomialDiagonal d(qubits);
    Eigen::VectorXd p0(qubits + 1);
    for (int l = 0; l <= qubits; ++l) {
      double acc = 0.0;
      for (int k = 0; k <= qubits; ++k) {
        acc += static_cast<double>(m(l, k)) * lambda[2 * k];
      }
      p0[l] = scale * static_cast<double>(d(l)) * acc;
    }
    return BornDistribution::z_type(qubits, std::move(p0));
  }
  const KravchukMatrix m(qubits - 1);
  const BinomialDiagonal d(qubits - 1);
  Eigen::VectorXd half_sum(qubits);
  Eigen::VectorXd half_diff(qubits);
  for (int l = 0; l < qubits; ++l) {
    double even_acc = 0.0;
    double odd_acc = 0.0;
    for (int k = 0; k < qubits; ++k) {
      even_acc += static_cast<double>(m(l, k)) * lambda[2 * k];
      odd_acc += static_cast<double>(m(l, k)) * lambda[2 * k + 1];
    }
    half_sum[l] = scale * static_cast<double>(d(l)) * even_acc;
    half_diff[l] = scale * static_cast<double>(d(l)) * odd_acc;
  }
  return BornDistribution::x_type(qubits, half_sum + half_diff, half_sum - half_diff);
}

Eigen::VectorXd born_to_circuit_eigs(const BornDistribution& p) {
  const int n = p.qubits();
  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(
      2 * n + 1, std::numeric_limits<double>::quiet_NaN());
  if (p.kind() == CircuitKind::Z) {
    const KravchukMatrix m(n);
    const BinomialDiagonal d(n);
    for (int k = 0; k <= n; ++k) {
      double acc = 0.0;
      for (int l = 0; l <= n; ++l) {
        acc += static_cast<double>(m(k, l)) * p.p0()[l] / static_cast<double>(d(l));
      }
      lambda[2 * k] = acc;
    }
    return lambda;
  }
  const KravchukMatrix m(n - 1);
  const BinomialDiagonal d(n - 1);
  const Eigen::VectorXd sum = p.p_plus() + p.p_minus();
  const Eigen::VectorXd diff = p.p_plus() - p.p_minus();
  for (int k = 0; k < n; ++k) {
    double even_acc = 0.0;
    double odd_acc = 0.0;
    for (int l = 0; l < n; ++l) {
      const double weight = static_cast<double>(m(k, l)) / static_cast<double>(d(l));
      even_acc += weight * sum[l];
      odd_acc += weight * diff[l];
    }
    lambda[2 * k] = even_acc;
    lambda[2 * k + 1] = odd_acc;
  }
  return lambda;
}

}  // namespace faces
