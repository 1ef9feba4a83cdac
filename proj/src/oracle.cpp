#include "faces/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace faces::oracle {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int popcount(unsigned value) { return __builtin_popcount(value); }

std::complex<double> ipow(int exponent) {
  switch (((exponent % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Cached dense Pauli basis for a fixed qubit count. The basis index of a
// string equals its packed label: qubit j contributes code (a_j + 2 b_j) as
// the j-th base-4 digit. State indices put qubit 1 in the top bit, matching
// the kron order of the dense operators.
struct PauliBasis {
  int qubits;
  std::vector<CMatrix> sigma;           // dense operators, phase convention i^(a.b)
  std::vector<unsigned> a_mask, b_mask; // per-index state-bit masks
  std::vector<std::complex<double>> global_phase;

  explicit PauliBasis(int n) : qubits(n) {
    const int count = 1 << (2 * n);
    const int dim = 1 << n;
    sigma.reserve(count);
    a_mask.resize(count);
    b_mask.resize(count);
    global_phase.resize(count);
    for (int x = 0; x < count; ++x) {
      unsigned a = 0, b = 0;
      for (int j = 0; j < n; ++j) {
        a |= ((x >> (2 * j)) & 1u) << (n - 1 - j);
        b |= ((x >> (2 * j + 1)) & 1u) << (n - 1 - j);
      }
      a_mask[static_cast<std::size_t>(x)] = a;
      b_mask[static_cast<std::size_t>(x)] = b;
      global_phase[static_cast<std::size_t>(x)] = ipow(popcount(a & b));
      CMatrix m = CMatrix::Zero(dim, dim);
      for (int c = 0; c < dim; ++c) {
        // sigma |c> = phase * (-1)^(b.c) |c xor a>
        const double sign = (popcount(b & static_cast<unsigned>(c)) % 2 == 0) ? 1.0 : -1.0;
        m(c ^ static_cast<int>(a), c) = global_phase[static_cast<std::size_t>(x)] * sign;
      }
      sigma.push_back(std::move(m));
    }
  }

  // tr(sigma_x A) without forming the product.
  std::complex<double> trace_with(int x, const CMatrix& a) const {
    std::complex<double> acc = 0.0;
    const unsigned am = a_mask[static_cast<std::size_t>(x)];
    const unsigned bm = b_mask[static_cast<std::size_t>(x)];
    const int dim = 1 << qubits;
    for (int c = 0; c < dim; ++c) {
      const double sign = (popcount(bm & static_cast<unsigned>(c)) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * a(c, c ^ static_cast<int>(am));
    }
    return global_phase[static_cast<std::size_t>(x)] * acc;
  }
};

const PauliBasis& basis_for(int qubits) {
  static std::unordered_map<int, PauliBasis> cache;
  auto it = cache.find(qubits);
  if (it == cache.end()) {
    it = cache.emplace(qubits, PauliBasis(qubits)).first;
  }
  return it->second;
}

}  // namespace

CMatrix dense_pauli(const PauliString& p) {
  const int n = p.qubits();
  require(n <= kMaxDensePauliQubits, "dense Pauli limited to small qubit counts");
  const int dim = 1 << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  unsigned a = 0, b = 0;
  for (int j = 1; j <= n; ++j) {
    // Qubit 1 is the leftmost tensor factor, i.e. the top bit of the index.
    if (p.x_bit(j)) a |= 1u << (n - j);
    if (p.z_bit(j)) b |= 1u << (n - j);
  }
  const std::complex<double> phase = p.phase().value() * ipow(popcount(a & b));
  for (int c = 0; c < dim; ++c) {
    const double sign = (popcount(b & static_cast<unsigned>(c)) % 2 == 0) ? 1.0 : -1.0;
    m(c ^ static_cast<int>(a), c) = phase * sign;
  }
  return m;
}

CMatrix dense_gamma(int modes, int mu) {
  require(mu >= 1 && mu <= modes, "Majorana index out of range");
  return dense_pauli(jw_pauli_of_monomial(MajoranaMonomial(modes, {mu})));
}

CMatrix dense_monomial(const MajoranaMonomial& alpha) {
  return dense_pauli(jw_pauli_of_monomial(alpha));
}

CMatrix dense_gate(const GateInstance& gate, int qubits) {
  require(qubits >= 1 && qubits <= kMaxDenseQubits, "dense gates limited to small qubit counts");
  const int dim = 1 << qubits;
  if (gate.id.kind == GateKind::ZRot) {
    require(gate.id.qubit >= 1 && gate.id.qubit <= qubits, "rotation qubit out of range");
    CMatrix u = CMatrix::Zero(dim, dim);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> up = std::exp(i * gate.theta);
    const std::complex<double> down = std::exp(-i * gate.theta);
    const unsigned mask = 1u << (qubits - gate.id.qubit);
    for (int c = 0; c < dim; ++c) {
      u(c, c) = ((static_cast<unsigned>(c) & mask) == 0) ? up : down;
    }
    return u;
  }
  require(gate.id.qubit >= 1 && gate.id.qubit < qubits, "hop qubit out of range");
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  g(0, 0) = s; g(0, 3) = s; g(3, 0) = s; g(3, 3) = -s;
  g(1, 1) = s; g(1, 2) = s; g(2, 1) = s; g(2, 2) = -s;
  const int left = 1 << (gate.id.qubit - 1);
  const int right = 1 << (qubits - gate.id.qubit - 1);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (int l = 0; l < left; ++l) {
    for (int r = 0; r < right; ++r) {
      for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
          const int row = (l * 4 + p) * right + r;
          const int col = (l * 4 + q) * right + r;
          u(row, col) = g(p, q);
        }
      }
    }
  }
  return u;
}

CMatrix dense_rotation_unitary(int qubits, const MajoranaRotation& rot) {
  const int modes = 2 * qubits;
  require(rot.mode >= 1 && rot.mode < modes, "rotation plane out of range");
  const int dim = 1 << qubits;
  const CMatrix pair = dense_gamma(modes, rot.mode) * dense_gamma(modes, rot.mode + 1);
  return std::cos(rot.angle / 2.0) * CMatrix::Identity(dim, dim) +
         std::sin(rot.angle / 2.0) * pair;
}

CMatrix dense_flo_unitary(int qubits, const GivensDecomposition& dec) {
  require(dec.modes == 2 * qubits, "decomposition mode count mismatch");
  const int dim = 1 << qubits;
  CMatrix u = dec.leading_reflection ? dense_gamma(dec.modes, 1)
                                     : CMatrix(CMatrix::Identity(dim, dim));
  for (const MajoranaRotation& rot : dec.rotations) {
    u = dense_rotation_unitary(qubits, rot) * u;
  }
  return u;
}

DenseState::DenseState(int qubits, CMatrix rho) : qubits_(qubits), rho_(std::move(rho)) {
  require(qubits >= 1 && qubits <= kMaxDenseQubits, "dense states limited to small qubit counts");
  require(rho_.rows() == (1 << qubits) && rho_.cols() == (1 << qubits),
          "density matrix has wrong shape");
}

DenseState DenseState::computational_zero(int qubits) {
  const int dim = 1 << qubits;
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DenseState(qubits, std::move(rho));
}

DenseState DenseState::all_plus(int qubits) {
  const int dim = 1 << qubits;
  CMatrix rho = CMatrix::Constant(dim, dim, 1.0 / static_cast<double>(dim));
  return DenseState(qubits, std::move(rho));
}

void DenseState::apply_unitary(const CMatrix& u) { rho_ = u * rho_ * u.adjoint(); }

void DenseState::apply_pauli_channel(const PauliChannel& channel) {
  require(channel.qubits() == qubits_, "channel qubit count mismatch");
  CMatrix out = CMatrix::Zero(rho_.rows(), rho_.cols());
  for (const auto& [label, p] : channel.probabilities()) {
    if (p == 0.0) continue;
    const CMatrix sigma = dense_pauli(PauliString::from_packed(qubits_, label));
    out += p * sigma * rho_ * sigma;
  }
  rho_ = std::move(out);
}

double DenseState::trace_defect() const { return std::abs(rho_.trace() - 1.0); }

double DenseState::hermiticity_defect() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DenseState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (rho_ + rho_.adjoint()));
  return solver.eigenvalues().minCoeff();
}

DenseSuperop::DenseSuperop(int qubits, Eigen::MatrixXd ptm) : qubits_(qubits), ptm_(std::move(ptm)) {
  require(qubits >= 1 && qubits <= kMaxSuperopQubits,
          "dense superoperators limited to small qubit counts");
  const int count = 1 << (2 * qubits);
  require(ptm_.rows() == count && ptm_.cols() == count, "transfer matrix has wrong shape");
}

DenseSuperop DenseSuperop::identity(int qubits) {
  const int count = 1 << (2 * qubits);
  return DenseSuperop(qubits, Eigen::MatrixXd::Identity(count, count));
}

DenseSuperop DenseSuperop::from_unitary(int qubits, const CMatrix& u) {
  const PauliBasis& basis = basis_for(qubits);
  const int count = 1 << (2 * qubits);
  const double dim = static_cast<double>(1 << qubits);
  Eigen::MatrixXd ptm(count, count);
  for (int y = 0; y < count; ++y) {
    const CMatrix conj = u * basis.sigma[static_cast<std::size_t>(y)] * u.adjoint();
    for (int x = 0; x < count; ++x) {
      ptm(x, y) = basis.trace_with(x, conj).real() / dim;
    }
  }
  return DenseSuperop(qubits, std::move(ptm));
}

DenseSuperop DenseSuperop::from_pauli_channel(const PauliChannel& channel) {
  const int qubits = channel.qubits();
  const PauliBasis& basis = basis_for(qubits);
  const int count = 1 << (2 * qubits);
  const double dim = static_cast<double>(1 << qubits);
  Eigen::MatrixXd ptm = Eigen::MatrixXd::Zero(count, count);
  for (const auto& [label, p] : channel.probabilities()) {
    if (p == 0.0) continue;
    const CMatrix& sigma = basis.sigma[static_cast<std::size_t>(label)];
    for (int y = 0; y < count; ++y) {
      const CMatrix conj = sigma * basis.sigma[static_cast<std::size_t>(y)] * sigma;
      for (int x = 0; x < count; ++x) {
        ptm(x, y) += p * basis.trace_with(x, conj).real() / dim;
      }
    }
  }
  return DenseSuperop(qubits, std::move(ptm));
}

DenseSuperop DenseSuperop::then(const DenseSuperop& next) const {
  require(qubits_ == next.qubits_, "superoperator qubit count mismatch");
  return DenseSuperop(qubits_, next.ptm_ * ptm_);
}

bool DenseSuperop::trace_preserving(double tol) const {
  const int count = static_cast<int>(ptm_.cols());
  for (int y = 0; y < count; ++y) {
    const double expected = (y == 0) ? 1.0 : 0.0;
    if (std::abs(ptm_(0, y) - expected) > tol) return false;
  }
  return true;
}

double DenseSuperop::choi_min_eigenvalue() const {
  const PauliBasis& basis = basis_for(qubits_);
  const int dim = 1 << qubits_;
  const int count = 1 << (2 * qubits_);
  // E(sigma_y) reconstructed densely, then assembled into the Choi operator
  // J = sum_ij E(|i><j|) (x) |i><j|.
  std::vector<CMatrix> image(static_cast<std::size_t>(count));
  for (int y = 0; y < count; ++y) {
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int x = 0; x < count; ++x) {
      if (ptm_(x, y) != 0.0) m += ptm_(x, y) * basis.sigma[static_cast<std::size_t>(x)];
    }
    image[static_cast<std::size_t>(y)] = std::move(m);
  }
  CMatrix choi = CMatrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      // |i><j| = (1/dim) sum_y tr(sigma_y |i><j|)* ... expand via the basis:
      // coefficient of sigma_y is <j| sigma_y |i> / dim.
      CMatrix block = CMatrix::Zero(dim, dim);
      for (int y = 0; y < count; ++y) {
        const std::complex<double> coeff =
            basis.sigma[static_cast<std::size_t>(y)](j, i) / static_cast<double>(dim);
        if (coeff != std::complex<double>(0.0, 0.0)) {
          block += coeff * image[static_cast<std::size_t>(y)];
        }
      }
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
          choi(r * dim + i, c * dim + j) += block(r, c);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (choi + choi.adjoint()));
  return solver.eigenvalues().minCoeff();
}

DenseSuperop mc_flo_twirl(const DenseSuperop& channel, int samples, Rng& rng) {
  require(samples >= 1, "twirl needs at least one sample");
  const int qubits = channel.qubits();
  const int count = 1 << (2 * qubits);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(count, count);
  for (int t = 0; t < samples; ++t) {
    const SingleParticleTransform r = haar_orthogonal(2 * qubits, rng);
    const GivensDecomposition dec = givens_decompose(r);
    const CMatrix u = dense_flo_unitary(qubits, dec);
    const Eigen::MatrixXd o = DenseSuperop::from_unitary(qubits, u).ptm();
    acc.noalias() += o * channel.ptm() * o.transpose();
  }
  acc /= static_cast<double>(samples);
  return DenseSuperop(qubits, std::move(acc));
}

TwirlExtraction extract_fermionic_probs(const DenseSuperop& twirled, double max_residual) {
  const int qubits = twirled.qubits();
  const int modes = 2 * qubits;
  const int count = 1 << (2 * qubits);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(modes + 1);
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(modes + 1);
  std::vector<int> degree_of(static_cast<std::size_t>(count));
  for (int x = 0; x < count; ++x) {
    const int degree =
        monomial_of_pauli(PauliString::from_packed(qubits, static_cast<std::uint64_t>(x)))
            .monomial.degree();
    degree_of[static_cast<std::size_t>(x)] = degree;
    sums[degree] += twirled.ptm()(x, x);
    counts[degree] += 1;
  }
  TwirlExtraction out;
  out.xi = sums.array() / counts.cast<double>().array();
  double residual = 0.0;
  for (int x = 0; x < count; ++x) {
    residual = std::max(residual,
                        std::abs(twirled.ptm()(x, x) - out.xi[degree_of[static_cast<std::size_t>(x)]]));
  }
  out.degree_residual = residual;
  if (residual > max_residual) {
    throw std::domain_error("superoperator is not twirled: in-degree spread " +
                            std::to_string(residual));
  }
  const auto rec = eigs_to_probs(EigenvalueVector(modes, out.xi));
  out.q = rec.q;
  return out;
}

BornDistribution oracle_born(CircuitKind kind, const std::vector<GateInstance>& gates,
                             int qubits, const GateNoiseModel& noise, int twirl_samples,
                             Rng& rng) {
  require(qubits >= 1 && qubits <= kMaxSuperopQubits, "oracle limited to small qubit counts");
  const PauliBasis& basis = basis_for(qubits);
  const int dim = 1 << qubits;
  const int count = 1 << (2 * qubits);

  const DenseState input = (kind == CircuitKind::Z) ? DenseState::computational_zero(qubits)
                                                    : DenseState::all_plus(qubits);
  Eigen::VectorXd coeffs(count);
  for (int x = 0; x < count; ++x) {
    coeffs[x] = basis.trace_with(x, input.rho()).real();
  }

  std::map<GateId, DenseSuperop> channel_ptm;
  for (const GateInstance& gate : gates) {
    const bool noisy = noise.has_gate(gate.id) &&
                       (noise.eigenvalues(gate.id).xi().array() != 1.0).any();
    if (noisy) {
      const auto& channel = noise.channel(gate.id);
      require(channel.has_value(),
              "oracle simulation needs the Pauli-channel truth for " + gate.id.to_string());
      if (channel_ptm.find(gate.id) == channel_ptm.end()) {
        channel_ptm.insert({gate.id, DenseSuperop::from_pauli_channel(*channel)});
      }
      // Fresh twirl samples per gate position keep positions independent.
      const DenseSuperop twirled = mc_flo_twirl(channel_ptm.at(gate.id), twirl_samples, rng);
      coeffs = twirled.ptm() * coeffs;
    }
    const DenseSuperop ideal = DenseSuperop::from_unitary(qubits, dense_gate(gate, qubits));
    coeffs = ideal.ptm() * coeffs;
  }

  CMatrix rho = CMatrix::Zero(dim, dim);
  for (int x = 0; x < count; ++x) {
    if (coeffs[x] != 0.0) rho += (coeffs[x] / dim) * basis.sigma[static_cast<std::size_t>(x)];
  }

  if (kind == CircuitKind::Z) {
    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(qubits + 1);
    for (int w = 0; w < dim; ++w) {
      p0[popcount(static_cast<unsigned>(w))] += rho(w, w).real();
    }
    return BornDistribution::z_type(qubits, std::move(p0));
  }

  Eigen::VectorXd p_plus = Eigen::VectorXd::Zero(qubits);
  Eigen::VectorXd p_minus = Eigen::VectorXd::Zero(qubits);
  const int rest = dim / 2;
  const std::complex<double> i(0.0, 1.0);
  for (int sign = 0; sign < 2; ++sign) {
    for (int y = 0; y < rest; ++y) {
      CVector v = CVector::Zero(dim);
      // Qubit 1 is the top bit; |+-_y> = (|0> +- i|1>)/sqrt(2).
      v[y] = 1.0 / std::sqrt(2.0);
      v[y + rest] = (sign == 0 ? i : -i) / std::sqrt(2.0);
      const double prob = (v.adjoint() * rho * v)(0, 0).real();
      const int weight = popcount(static_cast<unsigned>(y));
      if (sign == 0) {
        p_plus[weight] += prob;
      } else {
        p_minus[weight] += prob;
      }
    }
  }
  return BornDistribution::x_type(qubits, std::move(p_plus), std::move(p_minus));
}

}  // namespace faces::oracle
