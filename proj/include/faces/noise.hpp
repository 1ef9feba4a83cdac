#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "faces/kravchuk.hpp"
#include "faces/majorana.hpp"
#include "faces/rng.hpp"

namespace faces {

/// Pauli channel as a sparse probability table over packed Pauli labels.
class PauliChannel {
public:
  PauliChannel(int qubits, std::map<std::uint64_t, double> probabilities);
  static PauliChannel identity(int qubits);

  int qubits() const { return qubits_; }
  const std::map<std::uint64_t, double>& probabilities() const { return probs_; }
  double probability(std::uint64_t packed_label) const;

private:
  int qubits_;
  std::map<std::uint64_t, double> probs_;
};

/// Fermionic error probabilities of the freely twirled channel: each Pauli
/// label contributes its probability at the Majorana degree of its
/// monomial.
FermionicDistribution flo_twirl_pauli(const PauliChannel& channel);

/// Eigenvalues of the twirled channel (alias of probs_to_eigs, re-exported
/// on the noise-model side of the API).
EigenvalueVector channel_eigs(const FermionicDistribution& q);

/// Elementwise product of eigenvalue vectors: composition of twirled
/// channels.
EigenvalueVector compose_twirled(const EigenvalueVector& a, const EigenvalueVector& b);

/// Lowest qubit of the two-qubit pair that carries a gate's noise channel:
/// the hop pair itself, (j, j+1) for a rotation on qubit j, and (n-1, n)
/// for a rotation on the last qubit.
int noise_pair_low_qubit(const GateId& id, int qubits);

/// Two-qubit Pauli channel on the adjacent pair (low, low+1) of an n-qubit
/// register. The 15 non-identity pair probabilities are drawn i.i.d.
/// uniformly from [center - halfwidth, center + halfwidth], in a fixed
/// label order; the identity takes the complement.
PauliChannel random_two_qubit_pauli_noise(int qubits, int low_qubit, Rng& rng,
                                          double center = 1e-2, double halfwidth = 1e-3);

/// Immutable per-gate noise assignment. The eigenvalue vectors are the
/// canonical truth used by the fast simulation; the generating Pauli
/// channels are retained when known so the dense oracle can cross-check.
class GateNoiseModel {
public:
  struct Entry {
    EigenvalueVector eigs;
    std::optional<PauliChannel> channel;
  };

  GateNoiseModel(int modes, std::map<GateId, Entry> entries);

  static GateNoiseModel noiseless(int modes, const std::vector<GateId>& gates);
  static GateNoiseModel from_channels(int modes, const std::map<GateId, PauliChannel>& channels);
  /// Independent random two-qubit channel per gate id; each channel's
  /// stream is derived from (seed, gate id), so results do not depend on
  /// the order of the gate list.
  static GateNoiseModel random_two_qubit(int modes, const std::vector<GateId>& gates,
                                         std::uint64_t seed, double center = 1e-2,
                                         double halfwidth = 1e-3);

  int modes() const { return modes_; }
  const std::map<GateId, Entry>& entries() const { return entries_; }
  bool has_gate(const GateId& id) const { return entries_.count(id) != 0; }
  const EigenvalueVector& eigenvalues(const GateId& id) const;
  const std::optional<PauliChannel>& channel(const GateId& id) const;
  std::vector<GateId> gate_ids() const;

  /// Smallest eigenvalue across all gates; the weak-noise regime requires
  /// this to stay within [1 - c', 1].
  double min_eigenvalue() const;
  bool within_weak_noise(double c_prime = 0.5) const { return min_eigenvalue() >= 1.0 - c_prime; }

  nlohmann::json to_json() const;
  static GateNoiseModel from_json(const nlohmann::json& doc);

private:
  int modes_;
  std::map<GateId, Entry> entries_;
};

const EigenvalueVector& noisy_gate_eigs(const GateId& id, const GateNoiseModel& model);

}  // namespace faces
