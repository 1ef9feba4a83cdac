#include "faces/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace faces {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < m.cols(); ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

// Local 4x4 transition block of the hop gate, read off once from dense
// conjugation of the four Majorana operators on a two-qubit system.
const Eigen::Matrix4d& hop_block() {
  static const Eigen::Matrix4d block = [] {
    using Mat = Eigen::Matrix4cd;
    const std::complex<double> i(0.0, 1.0);
    Mat x = Mat::Zero(), y = Mat::Zero(), z = Mat::Zero();
    // Single-qubit Paulis promoted to the 2-qubit space, qubit 1 leftmost.
    Eigen::Matrix2cd sx, sy, sz, id;
    sx << 0, 1, 1, 0;
    sy << 0, -i, i, 0;
    sz << 1, 0, 0, -1;
    id.setIdentity();
    auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
      Mat out;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
      return out;
    };
    const Mat gamma[4] = {kron(sx, id), kron(sy, id), kron(sz, sx), kron(sz, sy)};
    // G(H,H): Hadamard on the even-parity block {00,11} and on the odd
    // block {01,10}.
    Mat g = Mat::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    g(0, 0) = s; g(0, 3) = s; g(3, 0) = s; g(3, 3) = -s;
    g(1, 1) = s; g(1, 2) = s; g(2, 1) = s; g(2, 2) = -s;
    Eigen::Matrix4d block_out;
    for (int mu = 0; mu < 4; ++mu) {
      const Mat conj = g * gamma[mu] * g.adjoint();
      for (int nu = 0; nu < 4; ++nu) {
        block_out(mu, nu) = ((gamma[nu].adjoint() * conj).trace() / 4.0).real();
      }
    }
    return block_out;
  }();
  return block;
}

}  // namespace

SingleParticleTransform::SingleParticleTransform(int modes, Eigen::MatrixXd r)
    : modes_(modes), r_(std::move(r)) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  require(r_.rows() == modes && r_.cols() == modes, "transition matrix has wrong shape");
  if (orthogonality_defect() > 1e-8) {
    throw std::invalid_argument("transition matrix is not orthogonal");
  }
}

SingleParticleTransform SingleParticleTransform::identity(int modes) {
  return SingleParticleTransform(modes, Eigen::MatrixXd::Identity(modes, modes));
}

double SingleParticleTransform::orthogonality_defect() const {
  return (r_.transpose() * r_ - Eigen::MatrixXd::Identity(modes_, modes_))
      .cwiseAbs()
      .maxCoeff();
}

double SingleParticleTransform::determinant() const { return r_.determinant(); }

SingleParticleTransform gate_transition_matrix(const GateInstance& gate, int modes) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  const int n = modes / 2;
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(modes, modes);
  if (gate.id.kind == GateKind::ZRot) {
    require(gate.id.qubit >= 1 && gate.id.qubit <= n, "rotation qubit out of range");
    const int row = 2 * gate.id.qubit - 2;  // 0-based index of mode 2j-1
    const double c = std::cos(2.0 * gate.theta);
    const double s = std::sin(2.0 * gate.theta);
    r(row, row) = c;
    r(row, row + 1) = -s;
    r(row + 1, row) = s;
    r(row + 1, row + 1) = c;
  } else {
    require(gate.id.qubit >= 1 && gate.id.qubit <= n - 1, "hop qubit out of range");
    const int row = 2 * gate.id.qubit - 2;
    r.block<4, 4>(row, row) = hop_block();
  }
  return SingleParticleTransform(modes, std::move(r));
}

SingleParticleTransform compose_transforms(const SingleParticleTransform& first,
                                           const SingleParticleTransform& then) {
  require(first.modes() == then.modes(), "mode count mismatch in composition");
  Eigen::MatrixXd product = first.r() * then.r();
  const double defect =
      (product.transpose() * product -
       Eigen::MatrixXd::Identity(first.modes(), first.modes()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-9) {
    product = orthonormalize(product);
  }
  return SingleParticleTransform(first.modes(), std::move(product));
}

SingleParticleTransform transition_of_sequence(const std::vector<GateInstance>& gates,
                                               int modes) {
  SingleParticleTransform net = SingleParticleTransform::identity(modes);
  for (const GateInstance& gate : gates) {
    net = compose_transforms(net, gate_transition_matrix(gate, modes));
  }
  return net;
}

std::vector<std::vector<int>> subsets_of_size(int universe, int k) {
  require(k >= 0 && k <= universe, "subset size out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i + 1;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == universe - (k - 1 - i)) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

double submatrix_determinant(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  require(cols.size() == rows.size(), "submatrix must be square");
  if (k == 0) return 1.0;
  auto at = [&](int i, int j) {
    return m(rows[static_cast<std::size_t>(i)] - 1, cols[static_cast<std::size_t>(j)] - 1);
  };
  switch (k) {
    case 1:
      return at(0, 0);
    case 2:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    case 4: {
      double det = 0.0;
      for (int c = 0; c < 4; ++c) {
        std::vector<int> sub_cols;
        for (int j = 0; j < 4; ++j) {
          if (j != c) sub_cols.push_back(cols[static_cast<std::size_t>(j)]);
        }
        const std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        const double minor = submatrix_determinant(m, sub_rows, sub_cols);
        det += ((c % 2 == 0) ? 1.0 : -1.0) * at(0, c) * minor;
      }
      return det;
    }
    default: {
      Eigen::MatrixXd sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = at(i, j);
      return Eigen::PartialPivLU<Eigen::MatrixXd>(sub).determinant();
    }
  }
}

Eigen::VectorXd compound_action(const SingleParticleTransform& r, const MajoranaMonomial& alpha) {
  require(alpha.modes == r.modes(), "mode count mismatch");
  const auto betas = subsets_of_size(r.modes(), alpha.degree());
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(betas.size()));
  for (std::size_t b = 0; b < betas.size(); ++b) {
    coeffs[static_cast<Eigen::Index>(b)] = submatrix_determinant(r.r(), alpha.support, betas[b]);
  }
  return coeffs;
}

std::vector<GateInstance> u_plus_gates(int qubits, int bins) {
  require(qubits >= 1, "qubit count must be positive");
  // Operator product, leftmost factor last in time.
  std::vector<GateInstance> ops;
  ops.push_back(make_zrot(1, -kPi / 4.0, bins));
  for (int j = 1; j <= qubits - 1; ++j) {
    ops.push_back(make_zrot(j + 1, -kPi / 4.0, bins));
    ops.push_back(make_fhop(j));
    ops.push_back(make_zrot(j, kPi / 4.0, bins));
    ops.push_back(make_fhop(j));
    ops.push_back(make_zrot(j + 1, kPi / 4.0, bins));
  }
  return {ops.rbegin(), ops.rend()};
}

SingleParticleTransform u_plus_transform(int qubits, int bins) {
  return transition_of_sequence(u_plus_gates(qubits, bins), 2 * qubits);
}

Eigen::MatrixXd canonical_reflection(int modes) {
  Eigen::MatrixXd r = -Eigen::MatrixXd::Identity(modes, modes);
  r(0, 0) = 1.0;
  return r;
}

SingleParticleTransform haar_orthogonal(int modes, Rng& rng) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  Eigen::MatrixXd gaussian(modes, modes);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) gaussian(i, j) = rng.normal();
  }
  Eigen::MatrixXd q = orthonormalize(gaussian);
  if (rng.coin()) {
    q = canonical_reflection(modes) * q;
  }
  return SingleParticleTransform(modes, std::move(q));
}

Eigen::MatrixXd rotation_transition(int modes, const MajoranaRotation& rot) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(modes, modes);
  const int i = rot.mode - 1;
  const double c = std::cos(rot.angle);
  const double s = std::sin(rot.angle);
  r(i, i) = c;
  r(i, i + 1) = -s;
  r(i + 1, i) = s;
  r(i + 1, i + 1) = c;
  return r;
}

SingleParticleTransform GivensDecomposition::compose() const {
  Eigen::MatrixXd net = leading_reflection ? canonical_reflection(modes)
                                           : Eigen::MatrixXd::Identity(modes, modes);
  for (const MajoranaRotation& rot : rotations) {
    net = net * rotation_transition(modes, rot);
  }
  return SingleParticleTransform(modes, std::move(net));
}

GivensDecomposition givens_decompose(const SingleParticleTransform& r) {
  const int modes = r.modes();
  GivensDecomposition out;
  out.modes = modes;

  Eigen::MatrixXd work = r.r();
  if (work.determinant() < 0.0) {
    out.leading_reflection = true;
    work = canonical_reflection(modes) * work;  // reflection inverse is itself
  }

  // Annihilate below-diagonal entries with left-applied adjacent-plane
  // rotations; the matrix stays orthogonal so the result is diag(+-1) with
  // determinant +1.
  std::vector<MajoranaRotation> left_factors;
  for (int col = 0; col < modes - 1; ++col) {
    for (int row = modes - 1; row > col; --row) {
      const double a = work(row - 1, col);
      const double b = work(row, col);
      if (std::abs(b) < 1e-14) continue;
      const double h = std::hypot(a, b);
      const double angle = std::atan2(-b, a);
      MajoranaRotation rot{row, angle};  // plane (row-1, row) in 0-based terms
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      const Eigen::RowVectorXd upper = work.row(row - 1);
      const Eigen::RowVectorXd lower = work.row(row);
      work.row(row - 1) = c * upper - s * lower;
      work.row(row) = s * upper + c * lower;
      work(row - 1, col) = h;
      work(row, col) = 0.0;
      left_factors.push_back(rot);
    }
  }

  // Clear residual -1 pairs on the diagonal by walking them together with
  // half-turn rotations.
  std::vector<int> negatives;
  for (int i = 0; i < modes; ++i) {
    if (work(i, i) < 0.0) negatives.push_back(i);
  }
  if (negatives.size() % 2 != 0) {
    throw std::logic_error("orthogonal reduction left an odd number of reflections");
  }
  for (std::size_t p = 0; p + 1 < negatives.size(); p += 2) {
    const int i = negatives[p];
    const int j = negatives[p + 1];
    for (int t = i; t < j; ++t) {
      // A half-turn in plane (t, t+1) negates both coordinates, shifting
      // the lone -1 one slot to the right until it cancels its partner.
      left_factors.push_back(MajoranaRotation{t + 1, kPi});
    }
  }

  // work = Q_s ... Q_1 R' = I  =>  R' = Q_1^T ... Q_s^T.
  out.rotations.reserve(left_factors.size());
  for (const MajoranaRotation& rot : left_factors) {
    out.rotations.push_back(MajoranaRotation{rot.mode, -rot.angle});
  }
  return out;
}

}  // namespace faces
