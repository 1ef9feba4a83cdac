#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "faces/errors.hpp"
#include "faces/kravchuk.hpp"
#include "faces/majorana.hpp"
#include "faces/noise.hpp"
#include "faces/rng.hpp"
#include "faces/transforms.hpp"

namespace faces {

/// One experiment circuit: a gate sequence (in application order) whose net
/// transition matrix is the identity (z kind) or the reference plus-basis
/// transform (x kind).
struct Circuit {
  CircuitKind kind = CircuitKind::Z;
  int id = 0;
  int qubits = 0;
  std::vector<GateInstance> gates;

  /// Max-abs deviation of the composed transition matrix from the kind's
  /// net target.
  double net_target_defect(int bins) const;

  nlohmann::json to_json() const;
  static Circuit from_json(const nlohmann::json& doc);
};

/// Canonically ordered set of gate parameters; defines the design matrix
/// columns.
class GateRegistry {
public:
  explicit GateRegistry(std::vector<GateId> ids);
  static GateRegistry from_circuits(const std::vector<Circuit>& circuits);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<GateId>& ids() const { return ids_; }
  bool contains(const GateId& id) const { return columns_.count(id) != 0; }
  int column(const GateId& id) const;

private:
  std::vector<GateId> ids_;
  std::map<GateId, int> columns_;
};

/// Occurrence-count matrix: rows are circuits, columns registry entries.
struct DesignMatrix {
  Eigen::MatrixXi counts;

  int circuit_count() const { return static_cast<int>(counts.rows()); }
  int parameter_count() const { return static_cast<int>(counts.cols()); }
  Eigen::MatrixXd as_real() const { return counts.cast<double>(); }
};

/// Count gate occurrences per circuit; every gate must be registered.
/// Throws IdentifiabilityError when the matrix is not full column rank.
DesignMatrix design_matrix(const std::vector<Circuit>& circuits, const GateRegistry& registry);

/// Row indices whose circuit eigenvalue estimates inform a Majorana degree:
/// z rows for even degrees, x rows for odd degrees and for even degrees
/// below 2n. Degree 0 is not estimated.
std::vector<int> rows_for_degree(const std::vector<Circuit>& circuits, int degree, int qubits);

/// Row-filtered design matrix for one degree sector.
Eigen::MatrixXd per_degree_rows(const DesignMatrix& design, const std::vector<Circuit>& circuits,
                                int degree, int qubits);

/// Moore-Penrose pseudoinverse via a rank-revealing factorization. Throws
/// IdentifiabilityError when the matrix is column-rank deficient.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a);

/// Induced infinity-norm (max row 1-norm) of the pseudoinverse.
double pinv_inf_norm(const Eigen::MatrixXd& a);

// ---------------------------------------------------------------------------
// Circuit construction

/// Uniformly random gate word: rotation qubits and angles and hop positions
/// drawn uniformly.
std::vector<GateInstance> random_word(int qubits, int bins, int length, Rng& rng);

/// Append the exact inverse word to make a net-identity circuit.
Circuit mirror_z_circuit(const std::vector<GateInstance>& word, int qubits, int bins, int id = 0);

/// Mirror word followed by the canonical plus-basis suffix.
Circuit mirror_x_circuit(const std::vector<GateInstance>& word, int qubits, int bins, int id = 0);

Circuit build_z_circuit(Rng& rng, int half_depth, int qubits, int bins, int id = 0);
Circuit build_x_circuit(Rng& rng, int half_depth, int qubits, int bins, int id = 0);

struct EnsembleOptions {
  int count_z = 0;
  int count_x = 0;
  int half_depth_min = 1;
  int half_depth_max = 4;
  int max_attempts = 5;
};

/// Seeded circuit collection with identifiability guarantees: every gate
/// parameter appearing anywhere is given at least one supporting circuit of
/// each kind (short coverage circuits replace the tail of the random pool),
/// and generation retries until every estimable degree sector has a
/// full-column-rank design. Throws IdentifiabilityError otherwise, naming
/// the deficient degrees.
std::vector<Circuit> build_circuit_ensemble(int qubits, int bins, const EnsembleOptions& options,
                                            std::uint64_t seed);

/// Model bundle: registry, per-gate noise, circuits and their design.
struct FacesModel {
  int qubits = 0;
  int bins = 0;
  GateRegistry registry;
  GateNoiseModel noise;
  std::vector<Circuit> circuits;
  DesignMatrix design;
};

/// Assemble and validate a model: builds the registry and design matrix,
/// requires J >= K, checks each degree sector for full column rank and
/// net-target invariants for every circuit.
FacesModel assemble_model(int qubits, int bins, std::vector<Circuit> circuits,
                          GateNoiseModel noise);

}  // namespace faces
