#include "faces/noise.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace faces {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr double kMassTolerance = 1e-12;

}  // namespace

PauliChannel::PauliChannel(int qubits, std::map<std::uint64_t, double> probabilities)
    : qubits_(qubits), probs_(std::move(probabilities)) {
  require(qubits >= 1, "qubit count must be positive");
  double mass = 0.0;
  for (const auto& [label, p] : probs_) {
    require(p >= 0.0, "Pauli error probabilities must be nonnegative");
    require(label >> (2 * qubits) == 0, "Pauli label out of range for qubit count");
    mass += p;
  }
  require(std::abs(mass - 1.0) <= kMassTolerance, "Pauli error probabilities must sum to 1");
}

PauliChannel PauliChannel::identity(int qubits) {
  return PauliChannel(qubits, {{0ull, 1.0}});
}

double PauliChannel::probability(std::uint64_t packed_label) const {
  const auto it = probs_.find(packed_label);
  return it == probs_.end() ? 0.0 : it->second;
}

FermionicDistribution flo_twirl_pauli(const PauliChannel& channel) {
  const int modes = 2 * channel.qubits();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(modes + 1);
  for (const auto& [label, p] : channel.probabilities()) {
    const auto decomposed = monomial_of_pauli(PauliString::from_packed(channel.qubits(), label));
    q[decomposed.monomial.degree()] += p;
  }
  q /= q.sum();
  return FermionicDistribution(modes, std::move(q));
}

EigenvalueVector channel_eigs(const FermionicDistribution& q) { return probs_to_eigs(q); }

EigenvalueVector compose_twirled(const EigenvalueVector& a, const EigenvalueVector& b) {
  require(a.modes() == b.modes(), "eigenvalue vector length mismatch");
  return EigenvalueVector(a.modes(), a.xi().cwiseProduct(b.xi()));
}

int noise_pair_low_qubit(const GateId& id, int qubits) {
  require(qubits >= 2, "two-qubit noise channels need at least two qubits");
  if (id.kind == GateKind::FHop) return id.qubit;
  return id.qubit < qubits ? id.qubit : qubits - 1;
}

PauliChannel random_two_qubit_pauli_noise(int qubits, int low_qubit, Rng& rng, double center,
                                          double halfwidth) {
  require(qubits >= 2, "two-qubit channel needs at least two qubits");
  require(low_qubit >= 1 && low_qubit < qubits, "pair must be adjacent and in range");
  require(halfwidth >= 0.0 && center >= halfwidth, "interval must stay nonnegative");
  require(15.0 * (center + halfwidth) < 1.0, "interval leaves no identity probability");

  static constexpr char kOps[4] = {'I', 'X', 'Z', 'Y'};
  std::map<std::uint64_t, double> probs;
  double mass = 0.0;
  // Fixed draw order: pair codes (c_low, c_high) ascending, identity skipped.
  for (int m = 1; m < 16; ++m) {
    const int c_low = m / 4;
    const int c_high = m % 4;
    const double p = center + halfwidth * (2.0 * rng.uniform() - 1.0);
    PauliString label = PauliString::identity(qubits);
    if (c_low != 0) label = label * PauliString::single(qubits, low_qubit, kOps[c_low]);
    if (c_high != 0) label = label * PauliString::single(qubits, low_qubit + 1, kOps[c_high]);
    probs[label.packed_label()] = p;
    mass += p;
  }
  probs[0ull] = 1.0 - mass;
  return PauliChannel(qubits, std::move(probs));
}

GateNoiseModel::GateNoiseModel(int modes, std::map<GateId, Entry> entries)
    : modes_(modes), entries_(std::move(entries)) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  for (const auto& [id, entry] : entries_) {
    require(entry.eigs.modes() == modes, "eigenvalue vector length mismatch for " + id.to_string());
    require(std::abs(entry.eigs[0] - 1.0) <= 1e-12,
            "gate eigenvalue vector must have xi_0 = 1 for " + id.to_string());
    if (entry.channel.has_value()) {
      const auto xi = channel_eigs(flo_twirl_pauli(*entry.channel));
      require((xi.xi() - entry.eigs.xi()).cwiseAbs().maxCoeff() <= 1e-12,
              "stored channel and eigenvalues disagree for " + id.to_string());
    }
  }
}

GateNoiseModel GateNoiseModel::noiseless(int modes, const std::vector<GateId>& gates) {
  std::map<GateId, Entry> entries;
  for (const GateId& id : gates) {
    entries.insert({id, Entry{EigenvalueVector(modes, Eigen::VectorXd::Ones(modes + 1)), {}}});
  }
  return GateNoiseModel(modes, std::move(entries));
}

GateNoiseModel GateNoiseModel::from_channels(int modes,
                                             const std::map<GateId, PauliChannel>& channels) {
  std::map<GateId, Entry> entries;
  for (const auto& [id, channel] : channels) {
    entries.insert({id, Entry{channel_eigs(flo_twirl_pauli(channel)), channel}});
  }
  return GateNoiseModel(modes, std::move(entries));
}

GateNoiseModel GateNoiseModel::random_two_qubit(int modes, const std::vector<GateId>& gates,
                                                std::uint64_t seed, double center,
                                                double halfwidth) {
  const int qubits = modes / 2;
  std::map<GateId, PauliChannel> channels;
  for (const GateId& id : gates) {
    if (channels.count(id) != 0) continue;
    Rng stream(derive_seed(seed, "noise/" + id.to_string()));
    channels.insert(
        {id, random_two_qubit_pauli_noise(qubits, noise_pair_low_qubit(id, qubits), stream,
                                          center, halfwidth)});
  }
  return from_channels(modes, channels);
}

const EigenvalueVector& GateNoiseModel::eigenvalues(const GateId& id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw std::out_of_range("gate " + id.to_string() + " is not in the noise model");
  }
  return it->second.eigs;
}

const std::optional<PauliChannel>& GateNoiseModel::channel(const GateId& id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw std::out_of_range("gate " + id.to_string() + " is not in the noise model");
  }
  return it->second.channel;
}

std::vector<GateId> GateNoiseModel::gate_ids() const {
  std::vector<GateId> ids;
  ids.reserve(entries_.size());
  for (const auto& [id, entry] : entries_) ids.push_back(id);
  return ids;
}

double GateNoiseModel::min_eigenvalue() const {
  double lowest = 1.0;
  for (const auto& [id, entry] : entries_) {
    lowest = std::min(lowest, entry.eigs.xi().minCoeff());
  }
  return lowest;
}

nlohmann::json GateNoiseModel::to_json() const {
  nlohmann::json gates = nlohmann::json::object();
  for (const auto& [id, entry] : entries_) {
    nlohmann::json g;
    g["xi"] = std::vector<double>(entry.eigs.xi().begin(), entry.eigs.xi().end());
    if (entry.channel.has_value()) {
      nlohmann::json pauli = nlohmann::json::object();
      for (const auto& [label, p] : entry.channel->probabilities()) {
        pauli[PauliString::from_packed(entry.channel->qubits(), label).label_string()] = p;
      }
      g["pauli"] = std::move(pauli);
    }
    gates[id.to_string()] = std::move(g);
  }
  return nlohmann::json{{"modes", modes_}, {"gates", std::move(gates)}};
}

GateNoiseModel GateNoiseModel::from_json(const nlohmann::json& doc) {
  const int modes = doc.at("modes").get<int>();
  std::map<GateId, Entry> entries;
  for (const auto& [key, value] : doc.at("gates").items()) {
    const GateId id = GateId::from_string(key);
    const auto xi_values = value.at("xi").get<std::vector<double>>();
    Eigen::VectorXd xi(static_cast<Eigen::Index>(xi_values.size()));
    for (std::size_t i = 0; i < xi_values.size(); ++i) xi[static_cast<Eigen::Index>(i)] = xi_values[i];
    Entry entry{EigenvalueVector(modes, std::move(xi)), {}};
    if (value.contains("pauli")) {
      std::map<std::uint64_t, double> probs;
      for (const auto& [label, p] : value.at("pauli").items()) {
        probs[PauliString::from_label(label).packed_label()] = p.get<double>();
      }
      entry.channel = PauliChannel(modes / 2, std::move(probs));
    }
    entries.insert({id, std::move(entry)});
  }
  return GateNoiseModel(modes, std::move(entries));
}

const EigenvalueVector& noisy_gate_eigs(const GateId& id, const GateNoiseModel& model) {
  return model.eigenvalues(id);
}

}  // namespace faces
