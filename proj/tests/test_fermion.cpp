#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "faces/majorana.hpp"
#include "faces/oracle.hpp"
#include "faces/rng.hpp"
#include "faces/transforms.hpp"

using namespace faces;
using oracle::CMatrix;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix target_gamma1_state(int n) {
  const int dim = 1 << n;
  const std::complex<double> i(0.0, 1.0);
  const CMatrix proj =
      (CMatrix::Identity(dim, dim) + i * oracle::dense_gamma(2 * n, 1)) / std::sqrt(2.0);
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return proj * rho * proj.adjoint();
}

}  // namespace

TEST_CASE("jordan-wigner images of generators and small monomials") {
  SUBCASE("single modes") {
    const auto x1 = jw_pauli_of_monomial(MajoranaMonomial(4, {1}));
    CHECK(x1.label_string() == "XI");
    CHECK(x1.phase() == QuarterPhase(0));

    const auto y1 = jw_pauli_of_monomial(MajoranaMonomial(4, {2}));
    CHECK(y1.label_string() == "YI");
    CHECK(y1.phase() == QuarterPhase(0));

    const auto zx = jw_pauli_of_monomial(MajoranaMonomial(4, {3}));
    CHECK(zx.label_string() == "ZX");
    CHECK(zx.phase() == QuarterPhase(0));
  }
  SUBCASE("gamma_1 gamma_2 = i Z_1") {
    const auto p = jw_pauli_of_monomial(MajoranaMonomial(2, {1, 2}));
    CHECK(p.label_string() == "Z");
    CHECK(p.phase() == QuarterPhase(1));
  }
  SUBCASE("phases verified against dense matrices at two qubits") {
    // The monomial value must equal phase * sigma_label exactly; this pins
    // the bookkeeping convention once and for all.
    for (const auto& support :
         {std::vector<int>{2, 3}, std::vector<int>{1, 2}, std::vector<int>{1, 2, 3},
          std::vector<int>{1, 3, 4}, std::vector<int>{1, 2, 3, 4}}) {
      const MajoranaMonomial alpha(4, support);
      CMatrix product = CMatrix::Identity(4, 4);
      for (const int mu : support) product = product * oracle::dense_gamma(4, mu);
      const auto jw = jw_pauli_of_monomial(alpha);
      CHECK((product - oracle::dense_pauli(jw)).cwiseAbs().maxCoeff() < 1e-14);
    }
    // gamma_2 gamma_3 = i X_1 X_2 under this convention.
    const auto p = jw_pauli_of_monomial(MajoranaMonomial(4, {2, 3}));
    CHECK(p.label_string() == "XX");
    CHECK(p.phase() == QuarterPhase(1));
  }
}

TEST_CASE("monomial_of_pauli inverts the correspondence") {
  SUBCASE("examples") {
    const auto x1 = monomial_of_pauli(PauliString::from_label("XI"));
    CHECK(x1.monomial.support == std::vector<int>{1});
    CHECK(x1.phase == QuarterPhase(0));

    const auto x2 = monomial_of_pauli(PauliString::from_label("IX"));
    CHECK(x2.monomial.support == std::vector<int>{1, 2, 3});

    const auto z1 = monomial_of_pauli(PauliString::from_label("ZI"));
    CHECK(z1.monomial.support == std::vector<int>{1, 2});
    CHECK(z1.phase == QuarterPhase(3));  // Z_1 = -i gamma_1 gamma_2
  }
  SUBCASE("round trip with unit phase product, exhaustive up to eight modes") {
    for (int n = 1; n <= 4; ++n) {
      for (std::uint64_t label = 0; label < (1ull << (2 * n)); ++label) {
        const auto sigma = PauliString::from_packed(n, label);
        const auto back = monomial_of_pauli(sigma);
        const auto jw = jw_pauli_of_monomial(back.monomial);
        CHECK(jw.same_label(sigma));
        // sigma = back.phase * gamma_alpha and gamma_alpha = jw.phase * sigma_label.
        CHECK(back.phase * jw.phase() == sigma.phase());
      }
    }
  }
}

TEST_CASE("dense anticommutation relations hold exactly") {
  for (int modes = 2; modes <= 8; modes += 2) {
    const int dim = 1 << (modes / 2);
    for (int mu = 1; mu <= modes; ++mu) {
      const CMatrix gmu = oracle::dense_gamma(modes, mu);
      CHECK((gmu - gmu.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      for (int nu = mu; nu <= modes; ++nu) {
        const CMatrix gnu = oracle::dense_gamma(modes, nu);
        const CMatrix anti = gmu * gnu + gnu * gmu;
        const CMatrix expected =
            (mu == nu) ? CMatrix(2.0 * CMatrix::Identity(dim, dim)) : CMatrix(CMatrix::Zero(dim, dim));
        CHECK((anti - expected).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("gate transition matrices match dense conjugation") {
  SUBCASE("zero-angle rotation is the identity") {
    const auto r = gate_transition_matrix(make_zrot(1, 0.0, 8), 2);
    CHECK((r.r() - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("rotation block sign convention at one qubit") {
    const double theta = 0.37;
    const auto r = gate_transition_matrix(make_zrot(1, theta, 8), 2);
    CHECK(r(1, 1) == doctest::Approx(std::cos(2 * theta)));
    CHECK(r(1, 2) == doctest::Approx(-std::sin(2 * theta)));
    CHECK(r(2, 1) == doctest::Approx(std::sin(2 * theta)));
    CHECK(r(2, 2) == doctest::Approx(std::cos(2 * theta)));
  }
  SUBCASE("dense faithfulness for the whole gate set at up to three qubits") {
    Rng rng(99);
    for (int n = 2; n <= 3; ++n) {
      std::vector<GateInstance> gates;
      for (int j = 1; j <= n; ++j) gates.push_back(make_zrot(j, rng.uniform(0.0, 2 * kPi), 8));
      for (int j = 1; j < n; ++j) gates.push_back(make_fhop(j));
      for (const auto& gate : gates) {
        const CMatrix u = oracle::dense_gate(gate, n);
        const auto r = gate_transition_matrix(gate, 2 * n);
        for (int mu = 1; mu <= 2 * n; ++mu) {
          CMatrix expected = CMatrix::Zero(1 << n, 1 << n);
          for (int nu = 1; nu <= 2 * n; ++nu) {
            if (r(mu, nu) != 0.0) expected += r(mu, nu) * oracle::dense_gamma(2 * n, nu);
          }
          const CMatrix conj = u * oracle::dense_gamma(2 * n, mu) * u.adjoint();
          CHECK((conj - expected).cwiseAbs().maxCoeff() < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("transform composition") {
  Rng rng(7);
  const auto r = haar_orthogonal(6, rng);
  SUBCASE("identity is neutral") {
    const auto composed = compose_transforms(r, SingleParticleTransform::identity(6));
    CHECK((composed.r() - r.r()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("orthogonality is preserved") {
    const SingleParticleTransform rt(6, Eigen::MatrixXd(r.r().transpose()));
    const auto composed = compose_transforms(r, rt);
    CHECK((composed.r() - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("rotation angles add") {
    const double t1 = 0.3, t2 = 1.1;
    const auto a = gate_transition_matrix(make_zrot(1, t1, 8), 4);
    const auto b = gate_transition_matrix(make_zrot(1, t2, 8), 4);
    const auto sum = gate_transition_matrix(make_zrot(1, t1 + t2, 8), 4);
    CHECK((compose_transforms(a, b).r() - sum.r()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(compose_transforms(r, SingleParticleTransform::identity(4)),
                    std::invalid_argument);
  }
}

TEST_CASE("compound action") {
  Rng rng(21);
  SUBCASE("degree one returns the matrix row") {
    const auto r = haar_orthogonal(6, rng);
    for (int mu = 1; mu <= 6; ++mu) {
      const auto coeffs = compound_action(r, MajoranaMonomial(6, {mu}));
      for (int nu = 1; nu <= 6; ++nu) {
        CHECK(coeffs[nu - 1] == doctest::Approx(r(mu, nu)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("full-degree compound is the determinant") {
    const auto r = haar_orthogonal(4, rng);
    const auto coeffs = compound_action(r, MajoranaMonomial(4, {1, 2, 3, 4}));
    REQUIRE(coeffs.size() == 1);
    CHECK(coeffs[0] == doctest::Approx(r.determinant()).epsilon(1e-10));
    CHECK(std::abs(std::abs(coeffs[0]) - 1.0) < 1e-10);
  }
  SUBCASE("identity transform gives a delta row") {
    const auto coeffs =
        compound_action(SingleParticleTransform::identity(6), MajoranaMonomial(6, {2, 5}));
    const auto betas = subsets_of_size(6, 2);
    for (std::size_t b = 0; b < betas.size(); ++b) {
      const double expected = (betas[b] == std::vector<int>{2, 5}) ? 1.0 : 0.0;
      CHECK(coeffs[static_cast<Eigen::Index>(b)] == doctest::Approx(expected));
    }
  }
  SUBCASE("rows have unit norm") {
    for (int modes = 4; modes <= 8; modes += 2) {
      const auto r = haar_orthogonal(modes, rng);
      for (int k = 1; k <= 3; ++k) {
        auto alpha = subsets_of_size(modes, k)[2];
        const auto coeffs = compound_action(r, MajoranaMonomial(modes, alpha));
        CHECK(coeffs.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
  SUBCASE("cauchy-binet: compound of a product is the product of compounds") {
    for (int modes = 4; modes <= 8; modes += 2) {
      const auto r1 = haar_orthogonal(modes, rng);
      const auto r2 = haar_orthogonal(modes, rng);
      const auto product = compose_transforms(r1, r2);
      for (int k = 1; k <= 3; ++k) {
        const auto subsets = subsets_of_size(modes, k);
        for (const auto& alpha : {subsets.front(), subsets.back()}) {
          const MajoranaMonomial mono(modes, alpha);
          const auto direct = compound_action(product, mono);
          // Compose through the intermediate degree-k space.
          Eigen::VectorXd via = Eigen::VectorXd::Zero(direct.size());
          const auto first = compound_action(r1, mono);
          for (std::size_t g = 0; g < subsets.size(); ++g) {
            if (first[static_cast<Eigen::Index>(g)] == 0.0) continue;
            const auto second = compound_action(r2, MajoranaMonomial(modes, subsets[g]));
            via += first[static_cast<Eigen::Index>(g)] * second;
          }
          CHECK((direct - via).cwiseAbs().maxCoeff() < 1e-8);
        }
      }
    }
  }
  SUBCASE("dense conjugation expands into compound coefficients") {
    for (int modes = 4; modes <= 6; modes += 2) {
      const int n = modes / 2;
      const auto r = haar_orthogonal(modes, rng);
      const CMatrix u = oracle::dense_flo_unitary(n, givens_decompose(r));
      for (int k = 1; k <= 3; ++k) {
        const auto betas = subsets_of_size(modes, k);
        const auto alpha = betas[1];
        const MajoranaMonomial mono(modes, alpha);
        const auto coeffs = compound_action(r, mono);
        CMatrix expected = CMatrix::Zero(1 << n, 1 << n);
        for (std::size_t b = 0; b < betas.size(); ++b) {
          expected += coeffs[static_cast<Eigen::Index>(b)] *
                      oracle::dense_monomial(MajoranaMonomial(modes, betas[b]));
        }
        const CMatrix conj = u * oracle::dense_monomial(mono) * u.adjoint();
        CHECK((conj - expected).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("reference plus-basis circuit") {
  SUBCASE("single qubit reduces to one rotation") {
    const auto gates = u_plus_gates(1, 8);
    REQUIRE(gates.size() == 1);
    CHECK(gates[0].id.kind == GateKind::ZRot);
    CHECK(gates[0].id.qubit == 1);
    CHECK(gates[0].theta == doctest::Approx(7.0 * kPi / 4.0));
  }
  SUBCASE("two qubits need six gates") { CHECK(u_plus_gates(2, 8).size() == 6); }
  SUBCASE("defining property holds densely up to three qubits") {
    for (int n = 1; n <= 3; ++n) {
      auto state = oracle::DenseState::all_plus(n);
      for (const auto& gate : u_plus_gates(n, 8)) {
        state.apply_unitary(oracle::dense_gate(gate, n));
      }
      CHECK((state.rho() - target_gamma1_state(n)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("transition matrix is bin-count independent") {
    const auto a = u_plus_transform(3, 8);
    const auto b = u_plus_transform(3, 46);
    CHECK((a.r() - b.r()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("haar orthogonal sampling") {
  SUBCASE("seeded draws are orthogonal and deterministic") {
    Rng rng1(123), rng2(123);
    const auto a = haar_orthogonal(8, rng1);
    const auto b = haar_orthogonal(8, rng2);
    CHECK(a.orthogonality_defect() < 1e-10);
    CHECK((a.r() - b.r()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("first moment vanishes") {
    Rng rng(31337);
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(4, 4);
    const int samples = 10000;
    for (int t = 0; t < samples; ++t) mean += haar_orthogonal(4, rng).r();
    mean /= static_cast<double>(samples);
    CHECK(mean.cwiseAbs().maxCoeff() < 0.05);
  }
  SUBCASE("determinant sign is balanced") {
    Rng rng(424242);
    const int samples = 10000;
    int negative = 0;
    for (int t = 0; t < samples; ++t) {
      if (haar_orthogonal(4, rng).determinant() < 0.0) ++negative;
    }
    // 3-sigma band around half of the draws.
    const double sigma = std::sqrt(samples * 0.25);
    CHECK(std::abs(negative - samples / 2) < 3.0 * sigma);
  }
}

TEST_CASE("givens decomposition") {
  SUBCASE("identity gives an empty factorization") {
    const auto dec = givens_decompose(SingleParticleTransform::identity(6));
    CHECK_FALSE(dec.leading_reflection);
    CHECK(dec.rotations.empty());
  }
  SUBCASE("a single adjacent rotation is recovered") {
    const double angle = 0.83;
    const SingleParticleTransform r(6, rotation_transition(6, MajoranaRotation{3, angle}));
    const auto dec = givens_decompose(r);
    REQUIRE(dec.rotations.size() == 1);
    CHECK(dec.rotations[0].mode == 3);
    CHECK(std::remainder(dec.rotations[0].angle - angle, 2 * kPi) == doctest::Approx(0.0));
  }
  SUBCASE("random transforms reconstruct to 1e-8") {
    Rng rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
      const auto r = haar_orthogonal(6, rng);
      const auto dec = givens_decompose(r);
      CHECK(dec.leading_reflection == (r.determinant() < 0.0));
      CHECK((dec.compose().r() - r.r()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  SUBCASE("compiled unitary reproduces the transition matrix") {
    Rng rng(5151);
    for (int n = 2; n <= 3; ++n) {
      const auto r = haar_orthogonal(2 * n, rng);
      const CMatrix u = oracle::dense_flo_unitary(n, givens_decompose(r));
      CHECK((u * u.adjoint() - CMatrix::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff() < 1e-10);
      for (int mu = 1; mu <= 2 * n; ++mu) {
        CMatrix expected = CMatrix::Zero(1 << n, 1 << n);
        for (int nu = 1; nu <= 2 * n; ++nu) {
          expected += r(mu, nu) * oracle::dense_gamma(2 * n, nu);
        }
        const CMatrix conj = u * oracle::dense_gamma(2 * n, mu) * u.adjoint();
        CHECK((conj - expected).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
  SUBCASE("non-orthogonal input is rejected") {
    CHECK_THROWS_AS(SingleParticleTransform(4, Eigen::MatrixXd::Constant(4, 4, 0.5)),
                    std::invalid_argument);
  }
}

TEST_CASE("gate id round trips and binning") {
  CHECK(GateId::from_string("zrot:3:17") == GateId{GateKind::ZRot, 3, 17});
  CHECK(GateId::from_string("fhop:2") == GateId{GateKind::FHop, 2, 0});
  CHECK(GateId{GateKind::ZRot, 3, 17}.to_string() == "zrot:3:17");

  CHECK(bin_of_angle(0.0, 46) == 1);
  CHECK(bin_of_angle(kPi / 4.0, 46) == 6);
  CHECK(bin_of_angle(7.0 * kPi / 4.0, 46) == 41);
  CHECK(bin_of_angle(2.0 * kPi - 1e-12, 46) == 46);

  const auto gate = make_zrot(2, 1.0, 46);
  const auto inv = inverse_gate(gate, 46);
  CHECK(inv.theta == doctest::Approx(2.0 * kPi - 1.0));
  const auto zero = make_zrot(1, 0.0, 46);
  CHECK(inverse_gate(zero, 46).theta == doctest::Approx(0.0));
  CHECK(inverse_gate(make_fhop(1), 46) == make_fhop(1));
}
