#include "faces/design.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace faces {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr double kNetTargetTolerance = 1e-8;

int matrix_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  return static_cast<int>(cod.rank());
}

std::string join_degrees(const std::vector<int>& degrees) {
  std::ostringstream out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i > 0) out << ", ";
    out << degrees[i];
  }
  return out.str();
}

}  // namespace

double Circuit::net_target_defect(int bins) const {
  const int modes = 2 * qubits;
  const SingleParticleTransform net = transition_of_sequence(gates, modes);
  const Eigen::MatrixXd target = (kind == CircuitKind::Z)
                                     ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(modes, modes))
                                     : u_plus_transform(qubits, bins).r();
  return (net.r() - target).cwiseAbs().maxCoeff();
}

nlohmann::json Circuit::to_json() const {
  nlohmann::json gate_list = nlohmann::json::array();
  for (const GateInstance& gate : gates) {
    nlohmann::json g{{"g", gate.id.to_string()}};
    if (gate.id.kind == GateKind::ZRot) g["theta"] = gate.theta;
    gate_list.push_back(std::move(g));
  }
  return nlohmann::json{
      {"id", id}, {"kind", to_string(kind)}, {"qubits", qubits}, {"gates", std::move(gate_list)}};
}

Circuit Circuit::from_json(const nlohmann::json& doc) {
  Circuit c;
  c.id = doc.at("id").get<int>();
  c.kind = circuit_kind_from_string(doc.at("kind").get<std::string>());
  c.qubits = doc.at("qubits").get<int>();
  for (const auto& g : doc.at("gates")) {
    GateInstance gate;
    gate.id = GateId::from_string(g.at("g").get<std::string>());
    gate.theta = g.contains("theta") ? g.at("theta").get<double>() : 0.0;
    c.gates.push_back(gate);
  }
  return c;
}

GateRegistry::GateRegistry(std::vector<GateId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    columns_[ids_[i]] = static_cast<int>(i);
  }
}

GateRegistry GateRegistry::from_circuits(const std::vector<Circuit>& circuits) {
  std::vector<GateId> ids;
  for (const Circuit& circuit : circuits) {
    for (const GateInstance& gate : circuit.gates) ids.push_back(gate.id);
  }
  return GateRegistry(std::move(ids));
}

int GateRegistry::column(const GateId& id) const {
  const auto it = columns_.find(id);
  if (it == columns_.end()) {
    throw std::out_of_range("gate " + id.to_string() + " is not registered");
  }
  return it->second;
}

DesignMatrix design_matrix(const std::vector<Circuit>& circuits, const GateRegistry& registry) {
  const int j = static_cast<int>(circuits.size());
  const int k = registry.size();
  if (j < k || j == 0) {
    throw IdentifiabilityError("design needs at least as many circuits as parameters (J=" +
                               std::to_string(j) + ", K=" + std::to_string(k) + ")");
  }
  DesignMatrix design;
  design.counts = Eigen::MatrixXi::Zero(j, k);
  for (int row = 0; row < j; ++row) {
    for (const GateInstance& gate : circuits[static_cast<std::size_t>(row)].gates) {
      design.counts(row, registry.column(gate.id)) += 1;
    }
  }
  if (matrix_rank(design.as_real()) < k) {
    throw IdentifiabilityError(
        "design matrix is not full rank; the model is not identifiable from these circuits");
  }
  return design;
}

std::vector<int> rows_for_degree(const std::vector<Circuit>& circuits, int degree, int qubits) {
  require(degree >= 1 && degree <= 2 * qubits,
          "degree must lie in 1..2n (degree 0 is not estimated)");
  std::vector<int> rows;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const CircuitKind kind = circuits[i].kind;
    const bool use = (degree % 2 == 1)   ? kind == CircuitKind::X
                     : (degree == 2 * qubits) ? kind == CircuitKind::Z
                                              : true;
    if (use) rows.push_back(static_cast<int>(i));
  }
  return rows;
}

Eigen::MatrixXd per_degree_rows(const DesignMatrix& design, const std::vector<Circuit>& circuits,
                                int degree, int qubits) {
  const auto rows = rows_for_degree(circuits, degree, qubits);
  Eigen::MatrixXd filtered(static_cast<Eigen::Index>(rows.size()), design.parameter_count());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    filtered.row(static_cast<Eigen::Index>(i)) =
        design.counts.row(rows[i]).cast<double>();
  }
  return filtered;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  if (static_cast<int>(cod.rank()) < a.cols()) {
    throw IdentifiabilityError("matrix is column-rank deficient (rank " +
                               std::to_string(cod.rank()) + " of " + std::to_string(a.cols()) +
                               "); a gauge parameter is present");
  }
  return cod.pseudoInverse();
}

double pinv_inf_norm(const Eigen::MatrixXd& a) {
  return pseudoinverse(a).cwiseAbs().rowwise().sum().maxCoeff();
}

std::vector<GateInstance> random_word(int qubits, int bins, int length, Rng& rng) {
  require(qubits >= 1, "qubit count must be positive");
  std::vector<GateInstance> word;
  word.reserve(static_cast<std::size_t>(length));
  const int slots = qubits + std::max(0, qubits - 1);
  for (int i = 0; i < length; ++i) {
    const int slot = static_cast<int>(rng.index(static_cast<std::uint64_t>(slots)));
    if (slot < qubits) {
      word.push_back(make_zrot(slot + 1, rng.uniform(0.0, 2.0 * std::numbers::pi), bins));
    } else {
      word.push_back(make_fhop(slot - qubits + 1));
    }
  }
  return word;
}

namespace {

std::vector<GateInstance> inverse_word(const std::vector<GateInstance>& word, int bins) {
  std::vector<GateInstance> inverse;
  inverse.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    inverse.push_back(inverse_gate(*it, bins));
  }
  return inverse;
}

}  // namespace

Circuit mirror_z_circuit(const std::vector<GateInstance>& word, int qubits, int bins, int id) {
  Circuit c;
  c.kind = CircuitKind::Z;
  c.id = id;
  c.qubits = qubits;
  c.gates = word;
  const auto inverse = inverse_word(word, bins);
  c.gates.insert(c.gates.end(), inverse.begin(), inverse.end());
  return c;
}

Circuit mirror_x_circuit(const std::vector<GateInstance>& word, int qubits, int bins, int id) {
  Circuit c = mirror_z_circuit(word, qubits, bins, id);
  c.kind = CircuitKind::X;
  const auto suffix = u_plus_gates(qubits, bins);
  c.gates.insert(c.gates.end(), suffix.begin(), suffix.end());
  return c;
}

Circuit build_z_circuit(Rng& rng, int half_depth, int qubits, int bins, int id) {
  require(half_depth >= 1, "z-type circuits need a nonempty word");
  return mirror_z_circuit(random_word(qubits, bins, half_depth, rng), qubits, bins, id);
}

Circuit build_x_circuit(Rng& rng, int half_depth, int qubits, int bins, int id) {
  require(half_depth >= 0, "negative half depth");
  return mirror_x_circuit(random_word(qubits, bins, half_depth, rng), qubits, bins, id);
}

namespace {

// Coverage circuits: short mirror circuits touching the listed parameters,
// packed a few parameters per circuit so replacing the random tail stays
// cheap. Rotation instances sit at bin centres, whose exact inverses are
// again bin centres (of the mirrored bin), so no new bins appear.
std::vector<GateInstance> coverage_word(const std::vector<GateId>& params, int bins) {
  std::vector<GateInstance> word;
  for (const GateId& id : params) {
    if (id.kind == GateKind::ZRot) {
      word.push_back(GateInstance{id, bin_center(id.bin, bins)});
    } else {
      word.push_back(GateInstance{id, 0.0});
    }
  }
  return word;
}

std::set<GateId> params_of(const std::vector<Circuit>& circuits, CircuitKind kind) {
  std::set<GateId> out;
  for (const Circuit& c : circuits) {
    if (c.kind != kind) continue;
    for (const GateInstance& gate : c.gates) out.insert(gate.id);
  }
  return out;
}

}  // namespace

std::vector<Circuit> build_circuit_ensemble(int qubits, int bins, const EnsembleOptions& options,
                                            std::uint64_t seed) {
  require(options.count_z >= 0 && options.count_x >= 0, "circuit counts must be nonnegative");
  require(options.half_depth_min >= 1 && options.half_depth_max >= options.half_depth_min,
          "invalid depth range");

  constexpr int kParamsPerCoverageCircuit = 3;
  std::vector<int> deficient_degrees;

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<Circuit> z_pool;
    std::vector<Circuit> x_pool;
    const std::uint64_t attempt_offset =
        static_cast<std::uint64_t>(attempt) *
        static_cast<std::uint64_t>(options.count_z + options.count_x + 1);
    for (int i = 0; i < options.count_z; ++i) {
      Rng rng(derive_seed(seed, "ensemble/z", attempt_offset + static_cast<std::uint64_t>(i)));
      const int depth = options.half_depth_min +
                        static_cast<int>(rng.index(static_cast<std::uint64_t>(
                            options.half_depth_max - options.half_depth_min + 1)));
      z_pool.push_back(build_z_circuit(rng, depth, qubits, bins));
    }
    for (int i = 0; i < options.count_x; ++i) {
      Rng rng(derive_seed(seed, "ensemble/x", attempt_offset + static_cast<std::uint64_t>(i)));
      const int depth = options.half_depth_min +
                        static_cast<int>(rng.index(static_cast<std::uint64_t>(
                            options.half_depth_max - options.half_depth_min + 1)));
      x_pool.push_back(build_x_circuit(rng, depth, qubits, bins));
    }

    // Give every appearing parameter at least one supporting circuit of
    // each kind. Short coverage circuits consume the tail of the random
    // pools so the configured circuit counts stay exact.
    std::vector<Circuit> z_cover, x_cover;
    bool coverage_ok = false;
    for (int round = 0; round < 8; ++round) {
      std::vector<Circuit> all = z_pool;
      all.insert(all.end(), z_cover.begin(), z_cover.end());
      all.insert(all.end(), x_pool.begin(), x_pool.end());
      all.insert(all.end(), x_cover.begin(), x_cover.end());
      const GateRegistry registry = GateRegistry::from_circuits(all);
      const auto z_params = params_of(all, CircuitKind::Z);
      const auto x_params = params_of(all, CircuitKind::X);
      std::vector<GateId> z_missing, x_missing;
      for (const GateId& id : registry.ids()) {
        if (options.count_z > 0 && z_params.count(id) == 0) z_missing.push_back(id);
        if (options.count_x > 0 && x_params.count(id) == 0) x_missing.push_back(id);
      }
      if (z_missing.empty() && x_missing.empty()) {
        coverage_ok = true;
        break;
      }

      const int z_needed =
          (static_cast<int>(z_missing.size()) + kParamsPerCoverageCircuit - 1) /
          kParamsPerCoverageCircuit;
      const int x_needed =
          (static_cast<int>(x_missing.size()) + kParamsPerCoverageCircuit - 1) /
          kParamsPerCoverageCircuit;
      if (z_needed > static_cast<int>(z_pool.size()) ||
          x_needed > static_cast<int>(x_pool.size())) {
        break;
      }
      for (int i = 0; i < z_needed; ++i) {
        const auto begin = z_missing.begin() + i * kParamsPerCoverageCircuit;
        const auto end = std::min(begin + kParamsPerCoverageCircuit, z_missing.end());
        z_pool.pop_back();
        z_cover.push_back(
            mirror_z_circuit(coverage_word(std::vector<GateId>(begin, end), bins), qubits, bins));
      }
      for (int i = 0; i < x_needed; ++i) {
        const auto begin = x_missing.begin() + i * kParamsPerCoverageCircuit;
        const auto end = std::min(begin + kParamsPerCoverageCircuit, x_missing.end());
        x_pool.pop_back();
        x_cover.push_back(
            mirror_x_circuit(coverage_word(std::vector<GateId>(begin, end), bins), qubits, bins));
      }
    }
    if (!coverage_ok) continue;

    std::vector<Circuit> circuits = std::move(z_pool);
    circuits.insert(circuits.end(), z_cover.begin(), z_cover.end());
    circuits.insert(circuits.end(), x_pool.begin(), x_pool.end());
    circuits.insert(circuits.end(), x_cover.begin(), x_cover.end());
    for (std::size_t i = 0; i < circuits.size(); ++i) circuits[i].id = static_cast<int>(i);

    const GateRegistry registry = GateRegistry::from_circuits(circuits);
    if (static_cast<int>(circuits.size()) < registry.size()) continue;
    DesignMatrix design;
    try {
      design = design_matrix(circuits, registry);
    } catch (const IdentifiabilityError&) {
      continue;
    }
    deficient_degrees.clear();
    for (int degree = 1; degree <= 2 * qubits; ++degree) {
      const Eigen::MatrixXd a_k = per_degree_rows(design, circuits, degree, qubits);
      if (matrix_rank(a_k) < registry.size()) deficient_degrees.push_back(degree);
    }
    if (deficient_degrees.empty()) return circuits;
  }

  std::string detail = deficient_degrees.empty()
                           ? std::string("parameter coverage could not be established")
                           : "design matrix is rank deficient in degree sectors {" +
                                 join_degrees(deficient_degrees) + "}";
  throw IdentifiabilityError("circuit ensemble generation failed: " + detail);
}

FacesModel assemble_model(int qubits, int bins, std::vector<Circuit> circuits,
                          GateNoiseModel noise) {
  require(qubits >= 1, "qubit count must be positive");
  GateRegistry registry = GateRegistry::from_circuits(circuits);
  for (const GateId& id : registry.ids()) {
    if (!noise.has_gate(id)) {
      throw std::invalid_argument("noise model is missing gate " + id.to_string());
    }
  }
  for (const Circuit& circuit : circuits) {
    require(circuit.qubits == qubits, "circuit qubit count mismatch");
    if (circuit.net_target_defect(bins) > kNetTargetTolerance) {
      throw std::invalid_argument("circuit " + std::to_string(circuit.id) +
                                  " does not compose to its net target");
    }
  }
  DesignMatrix design = design_matrix(circuits, registry);
  std::vector<int> deficient;
  for (int degree = 1; degree <= 2 * qubits; ++degree) {
    if (matrix_rank(per_degree_rows(design, circuits, degree, qubits)) < registry.size()) {
      deficient.push_back(degree);
    }
  }
  if (!deficient.empty()) {
    throw IdentifiabilityError("design matrix is rank deficient in degree sectors {" +
                               join_degrees(deficient) + "}");
  }
  return FacesModel{qubits, bins, std::move(registry), std::move(noise), std::move(circuits),
                    std::move(design)};
}

}  // namespace faces
