#include <doctest.h>

#include <nlohmann/json.hpp>

#include "faces/noise.hpp"
#include "faces/oracle.hpp"
#include "faces/rng.hpp"

using namespace faces;

namespace {

// Independent degree classifier: expand the dense Pauli in the monomial
// basis by trace inner products and report the unique nonvanishing degree.
int dense_majorana_degree(const PauliString& sigma) {
  const int n = sigma.qubits();
  const auto dense = oracle::dense_pauli(sigma);
  const double dim = static_cast<double>(1 << n);
  int found = -1;
  for (int k = 0; k <= 2 * n; ++k) {
    for (const auto& support : subsets_of_size(2 * n, k)) {
      const auto overlap =
          (oracle::dense_monomial(MajoranaMonomial(2 * n, support)).adjoint() * dense).trace() /
          dim;
      if (std::abs(overlap) > 1e-9) {
        REQUIRE(found == -1);
        found = k;
      }
    }
  }
  REQUIRE(found >= 0);
  return found;
}

PauliChannel two_qubit_channel_at(int qubits, int low, const char* first, const char* second,
                                  double p) {
  PauliString label = PauliString::identity(qubits);
  if (first[0] != 'I') label = label * PauliString::single(qubits, low, first[0]);
  if (second[0] != 'I') label = label * PauliString::single(qubits, low + 1, second[0]);
  std::map<std::uint64_t, double> probs{{0ull, 1.0 - p}};
  probs[label.packed_label()] += p;
  return PauliChannel(qubits, probs);
}

}  // namespace

TEST_CASE("flo twirl of simple channels") {
  SUBCASE("identity channel") {
    const auto q = flo_twirl_pauli(PauliChannel::identity(3));
    CHECK(q[0] == doctest::Approx(1.0));
    for (int k = 1; k <= 6; ++k) CHECK(q[k] == 0.0);
  }
  SUBCASE("single-qubit depolarizing-like channel") {
    std::map<std::uint64_t, double> probs;
    probs[0] = 0.97;
    probs[PauliString::single(1, 1, 'X').packed_label()] = 0.01;
    probs[PauliString::single(1, 1, 'Y').packed_label()] = 0.01;
    probs[PauliString::single(1, 1, 'Z').packed_label()] = 0.01;
    const auto q = flo_twirl_pauli(PauliChannel(1, probs));
    CHECK(q[0] == doctest::Approx(0.97));
    CHECK(q[1] == doctest::Approx(0.02));  // X and Y have degree one
    CHECK(q[2] == doctest::Approx(0.01));  // Z has degree two
  }
  SUBCASE("X on the second of two qubits has degree three") {
    std::map<std::uint64_t, double> probs;
    probs[PauliString::single(2, 2, 'X').packed_label()] = 1.0;
    const auto q = flo_twirl_pauli(PauliChannel(2, probs));
    CHECK(q[3] == doctest::Approx(1.0));
  }
  SUBCASE("mass is conserved for random channels") {
    Rng rng(404);
    for (int trial = 0; trial < 20; ++trial) {
      const auto channel = random_two_qubit_pauli_noise(3, 1 + trial % 2, rng);
      const auto q = flo_twirl_pauli(channel);
      CHECK(q.q().sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("degrees assigned by the twirl match the dense classification") {
  // All 15 two-qubit Paulis at every adjacent position, small sizes here;
  // the acceptance suite extends this to five qubits.
  static constexpr const char* kOps[4] = {"I", "X", "Z", "Y"};
  for (int n = 2; n <= 3; ++n) {
    for (int low = 1; low < n; ++low) {
      for (int m = 1; m < 16; ++m) {
        PauliString label = PauliString::identity(n);
        if (m / 4 != 0) label = label * PauliString::single(n, low, kOps[m / 4][0]);
        if (m % 4 != 0) label = label * PauliString::single(n, low + 1, kOps[m % 4][0]);
        const int fast = monomial_of_pauli(label).monomial.degree();
        CHECK(fast == dense_majorana_degree(label));
      }
    }
  }
}

TEST_CASE("channel eigenvalue extraction and composition") {
  SUBCASE("identity channel gives all-ones eigenvalues") {
    const auto xi = channel_eigs(flo_twirl_pauli(PauliChannel::identity(2)));
    for (int j = 0; j <= 4; ++j) CHECK(xi[j] == doctest::Approx(1.0));
  }
  SUBCASE("worked two-mode case") {
    Eigen::VectorXd q(3);
    q << 0.9, 0.1, 0.0;
    const auto xi = channel_eigs(FermionicDistribution(2, q));
    CHECK(xi[0] == doctest::Approx(1.0));
    CHECK(xi[1] == doctest::Approx(0.9));
    CHECK(xi[2] == doctest::Approx(0.8));
  }
  SUBCASE("composition is the elementwise product") {
    Eigen::VectorXd a(3), b(3);
    a << 1.0, 0.9, 0.8;
    b << 1.0, 0.5, 0.25;
    const auto ab = compose_twirled(EigenvalueVector(2, a), EigenvalueVector(2, b));
    CHECK(ab[0] == doctest::Approx(1.0));
    CHECK(ab[1] == doctest::Approx(0.45));
    CHECK(ab[2] == doctest::Approx(0.2));
    const auto ba = compose_twirled(EigenvalueVector(2, b), EigenvalueVector(2, a));
    CHECK((ab.xi() - ba.xi()).cwiseAbs().maxCoeff() == 0.0);
    const auto same =
        compose_twirled(EigenvalueVector(2, a), EigenvalueVector(2, Eigen::VectorXd::Ones(3)));
    CHECK((same.xi() - a).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("random two-qubit channel generator") {
  SUBCASE("zero halfwidth pins every probability") {
    Rng rng(1);
    const auto channel = random_two_qubit_pauli_noise(2, 1, rng, 0.01, 0.0);
    CHECK(channel.probability(0) == doctest::Approx(0.85));
    int nontrivial = 0;
    for (const auto& [label, p] : channel.probabilities()) {
      if (label == 0) continue;
      ++nontrivial;
      CHECK(p == doctest::Approx(0.01));
    }
    CHECK(nontrivial == 15);
  }
  SUBCASE("draws stay inside the configured interval") {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const auto channel = random_two_qubit_pauli_noise(4, 1 + trial % 3, rng);
      for (const auto& [label, p] : channel.probabilities()) {
        if (label == 0) continue;
        CHECK(p >= 0.009);
        CHECK(p <= 0.011);
      }
    }
  }
  SUBCASE("seeded draws are reproducible") {
    Rng a(77), b(77);
    const auto ca = random_two_qubit_pauli_noise(3, 2, a);
    const auto cb = random_two_qubit_pauli_noise(3, 2, b);
    REQUIRE(ca.probabilities().size() == cb.probabilities().size());
    for (const auto& [label, p] : ca.probabilities()) {
      CHECK(p == cb.probability(label));
    }
  }
  SUBCASE("invalid parameter ranges are rejected") {
    Rng rng(3);
    CHECK_THROWS_AS(random_two_qubit_pauli_noise(2, 1, rng, 0.07, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(random_two_qubit_pauli_noise(2, 1, rng, 0.01, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(random_two_qubit_pauli_noise(2, 2, rng), std::invalid_argument);
  }
}

TEST_CASE("gate noise models") {
  const std::vector<GateId> gates = {GateId{GateKind::ZRot, 1, 3}, GateId{GateKind::ZRot, 2, 1},
                                     GateId{GateKind::FHop, 1, 0}};
  SUBCASE("noiseless model returns all-ones eigenvalues") {
    const auto model = GateNoiseModel::noiseless(4, gates);
    for (const auto& id : gates) {
      CHECK((model.eigenvalues(id).xi().array() == 1.0).all());
    }
    CHECK(model.within_weak_noise());
  }
  SUBCASE("unknown gates are rejected") {
    const auto model = GateNoiseModel::noiseless(4, gates);
    CHECK_THROWS_AS(model.eigenvalues(GateId{GateKind::ZRot, 1, 9}), std::out_of_range);
  }
  SUBCASE("shared gate ids share the stored eigenvalue object") {
    const auto model = GateNoiseModel::random_two_qubit(4, gates, 99);
    const auto& first = model.eigenvalues(gates[0]);
    const auto& second = model.eigenvalues(gates[0]);
    CHECK(&first == &second);
  }
  SUBCASE("channel truth chains through twirl and eigenvalue extraction") {
    std::map<std::uint64_t, double> probs;
    probs[0] = 0.97;
    probs[PauliString::single(1, 1, 'X').packed_label()] = 0.01;
    probs[PauliString::single(1, 1, 'Y').packed_label()] = 0.01;
    probs[PauliString::single(1, 1, 'Z').packed_label()] = 0.01;
    std::map<GateId, PauliChannel> channels{{gates[0], PauliChannel(1, probs)}};
    const auto model = GateNoiseModel::from_channels(2, channels);
    const auto expected = channel_eigs(flo_twirl_pauli(PauliChannel(1, probs)));
    CHECK((model.eigenvalues(gates[0]).xi() - expected.xi()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("random models stay in the weak-noise regime") {
    const auto model = GateNoiseModel::random_two_qubit(10, gates, 1234);
    CHECK(model.within_weak_noise(0.5));
    CHECK(model.min_eigenvalue() > 0.5);
    CHECK(model.min_eigenvalue() < 1.0);
  }
  SUBCASE("gate seeding does not depend on list order") {
    const std::vector<GateId> reversed = {gates[2], gates[1], gates[0]};
    const auto a = GateNoiseModel::random_two_qubit(6, gates, 5);
    const auto b = GateNoiseModel::random_two_qubit(6, reversed, 5);
    for (const auto& id : gates) {
      CHECK((a.eigenvalues(id).xi() - b.eigenvalues(id).xi()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("noise model serialization round trip") {
  const std::vector<GateId> gates = {GateId{GateKind::ZRot, 1, 2}, GateId{GateKind::FHop, 2, 0}};
  const auto model = GateNoiseModel::random_two_qubit(6, gates, 31);
  const auto doc = model.to_json();
  const auto restored = GateNoiseModel::from_json(doc);
  CHECK(restored.modes() == model.modes());
  for (const auto& id : gates) {
    CHECK((restored.eigenvalues(id).xi() - model.eigenvalues(id).xi()).cwiseAbs().maxCoeff() ==
          0.0);
    REQUIRE(restored.channel(id).has_value());
    for (const auto& [label, p] : model.channel(id)->probabilities()) {
      CHECK(restored.channel(id)->probability(label) == p);
    }
  }
  // Serialized form is stable under a second round trip.
  CHECK(GateNoiseModel::from_json(restored.to_json()).to_json().dump() == doc.dump());
}
