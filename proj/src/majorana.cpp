#include "faces/majorana.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace faces {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Single-qubit codes: I=0, X=1, Z=2, Y=3 (code = a + 2b). The code of a
// product is the XOR of codes; the phase exponent (power of i) follows the
// Hermitian Pauli multiplication rules.
constexpr std::array<std::array<int, 4>, 4> kPhaseTable = {{
    // columns: I, X, Z, Y  (right factor)
    {{0, 0, 0, 0}},  // I *
    {{0, 0, 3, 1}},  // X *   (XZ = -iY, XY = +iZ)
    {{0, 1, 0, 3}},  // Z *   (ZX = +iY, ZY = -iX)
    {{0, 3, 1, 0}},  // Y *   (YX = -iZ, YZ = +iX)
}};

int code_of(bool x, bool z) { return (x ? 1 : 0) + (z ? 2 : 0); }

}  // namespace

std::string QuarterPhase::to_string() const {
  switch (exponent_) {
    case 0: return "+1";
    case 1: return "+i";
    case 2: return "-1";
    default: return "-i";
  }
}

MajoranaMonomial::MajoranaMonomial(int modes_in, std::vector<int> support_in)
    : modes(modes_in), support(std::move(support_in)) {
  require(modes >= 2 && modes % 2 == 0, "mode count must be a positive even integer");
  int prev = 0;
  for (const int mu : support) {
    require(mu >= 1 && mu <= modes, "Majorana index out of range");
    require(mu > prev, "Majorana support must be strictly ascending");
    prev = mu;
  }
}

PauliString::PauliString(int qubits, std::vector<std::uint8_t> x_bits,
                         std::vector<std::uint8_t> z_bits, QuarterPhase phase)
    : qubits_(qubits), x_(std::move(x_bits)), z_(std::move(z_bits)), phase_(phase) {
  require(qubits >= 1, "qubit count must be positive");
  require(x_.size() == static_cast<std::size_t>(qubits) &&
              z_.size() == static_cast<std::size_t>(qubits),
          "Pauli label must have exactly n X-bits and n Z-bits");
}

PauliString PauliString::identity(int qubits) {
  return PauliString(qubits, std::vector<std::uint8_t>(qubits, 0),
                     std::vector<std::uint8_t>(qubits, 0));
}

PauliString PauliString::single(int qubits, int qubit, char op) {
  require(qubit >= 1 && qubit <= qubits, "qubit index out of range");
  PauliString p = identity(qubits);
  const auto idx = static_cast<std::size_t>(qubit - 1);
  switch (op) {
    case 'X': p.x_[idx] = 1; break;
    case 'Y': p.x_[idx] = 1; p.z_[idx] = 1; break;
    case 'Z': p.z_[idx] = 1; break;
    default: throw std::invalid_argument("Pauli op must be X, Y or Z");
  }
  return p;
}

PauliString PauliString::from_packed(int qubits, std::uint64_t label) {
  require(qubits >= 1 && qubits <= 32, "packed labels support up to 32 qubits");
  std::vector<std::uint8_t> x(qubits, 0);
  std::vector<std::uint8_t> z(qubits, 0);
  for (int j = 0; j < qubits; ++j) {
    x[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((label >> (2 * j)) & 1ull);
    z[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((label >> (2 * j + 1)) & 1ull);
  }
  return PauliString(qubits, std::move(x), std::move(z));
}

PauliString PauliString::from_label(const std::string& label) {
  require(!label.empty(), "empty Pauli label");
  const int n = static_cast<int>(label.size());
  PauliString p = identity(n);
  for (int j = 1; j <= n; ++j) {
    const char c = label[static_cast<std::size_t>(j - 1)];
    if (c == 'I') continue;
    p = p * single(n, j, c);
  }
  return p;
}

PauliString PauliString::operator*(const PauliString& other) const {
  require(qubits_ == other.qubits_, "qubit count mismatch in Pauli product");
  std::vector<std::uint8_t> x(static_cast<std::size_t>(qubits_));
  std::vector<std::uint8_t> z(static_cast<std::size_t>(qubits_));
  int phase_exp = phase_.exponent() + other.phase_.exponent();
  for (std::size_t j = 0; j < static_cast<std::size_t>(qubits_); ++j) {
    const int left = code_of(x_[j] != 0, z_[j] != 0);
    const int right = code_of(other.x_[j] != 0, other.z_[j] != 0);
    phase_exp += kPhaseTable[static_cast<std::size_t>(left)][static_cast<std::size_t>(right)];
    x[j] = x_[j] ^ other.x_[j];
    z[j] = z_[j] ^ other.z_[j];
  }
  return PauliString(qubits_, std::move(x), std::move(z), QuarterPhase(phase_exp));
}

bool PauliString::same_label(const PauliString& other) const {
  return qubits_ == other.qubits_ && x_ == other.x_ && z_ == other.z_;
}

int PauliString::weight() const {
  int w = 0;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    if (x_[j] != 0 || z_[j] != 0) ++w;
  }
  return w;
}

std::uint64_t PauliString::packed_label() const {
  require(qubits_ <= 32, "packed labels support up to 32 qubits");
  std::uint64_t label = 0;
  for (int j = 0; j < qubits_; ++j) {
    label |= static_cast<std::uint64_t>(x_[static_cast<std::size_t>(j)]) << (2 * j);
    label |= static_cast<std::uint64_t>(z_[static_cast<std::size_t>(j)]) << (2 * j + 1);
  }
  return label;
}

std::string PauliString::label_string() const {
  static constexpr std::array<char, 4> names = {'I', 'X', 'Z', 'Y'};
  std::string out(static_cast<std::size_t>(qubits_), 'I');
  for (std::size_t j = 0; j < static_cast<std::size_t>(qubits_); ++j) {
    out[j] = names[static_cast<std::size_t>(code_of(x_[j] != 0, z_[j] != 0))];
  }
  return out;
}

PauliString jw_pauli_of_monomial(const MajoranaMonomial& alpha) {
  const int n = alpha.modes / 2;
  PauliString result = PauliString::identity(n);
  for (const int mu : alpha.support) {
    const int j = (mu + 1) / 2;  // qubit carrying the X or Y factor
    PauliString gamma = PauliString::identity(n);
    for (int i = 1; i < j; ++i) gamma = gamma * PauliString::single(n, i, 'Z');
    gamma = gamma * PauliString::single(n, j, (mu % 2 == 1) ? 'X' : 'Y');
    result = result * gamma;
  }
  return result;
}

MonomialWithPhase monomial_of_pauli(const PauliString& sigma) {
  const int n = sigma.qubits();
  std::vector<int> support;
  // Walk from the top qubit down, peeling off the parity of higher modes.
  std::vector<bool> members(static_cast<std::size_t>(2 * n + 1), false);
  bool higher_parity = false;
  for (int j = n; j >= 1; --j) {
    const bool m2 = sigma.z_bit(j) != higher_parity;             // mode 2j present
    const bool m1 = sigma.x_bit(j) != m2;                        // mode 2j-1 present
    members[static_cast<std::size_t>(2 * j)] = m2;
    members[static_cast<std::size_t>(2 * j - 1)] = m1;
    if (m1 != m2) higher_parity = !higher_parity;
  }
  for (int mu = 1; mu <= 2 * n; ++mu) {
    if (members[static_cast<std::size_t>(mu)]) support.push_back(mu);
  }
  MajoranaMonomial alpha(2 * n, std::move(support));
  const PauliString jw = jw_pauli_of_monomial(alpha);
  if (!jw.same_label(sigma)) {
    throw std::logic_error("Jordan-Wigner inversion produced a mismatched label");
  }
  // gamma_alpha = jw.phase * sigma_label and sigma = sigma.phase * sigma_label,
  // hence sigma = (sigma.phase / jw.phase) * gamma_alpha.
  return MonomialWithPhase{std::move(alpha), sigma.phase() * jw.phase().inverse()};
}

std::string GateId::to_string() const {
  if (kind == GateKind::ZRot) {
    return "zrot:" + std::to_string(qubit) + ":" + std::to_string(bin);
  }
  return "fhop:" + std::to_string(qubit);
}

GateId GateId::from_string(const std::string& text) {
  const auto first = text.find(':');
  require(first != std::string::npos, "malformed gate id '" + text + "'");
  const std::string kind = text.substr(0, first);
  if (kind == "fhop") {
    return GateId{GateKind::FHop, std::stoi(text.substr(first + 1)), 0};
  }
  require(kind == "zrot", "malformed gate id '" + text + "'");
  const auto second = text.find(':', first + 1);
  require(second != std::string::npos, "malformed gate id '" + text + "'");
  const int qubit = std::stoi(text.substr(first + 1, second - first - 1));
  const int bin = std::stoi(text.substr(second + 1));
  return GateId{GateKind::ZRot, qubit, bin};
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return wrapped;
}

int bin_of_angle(double theta, int bins) {
  require(bins >= 1, "bin count must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double wrapped = wrap_angle(theta);
  int bin = static_cast<int>(std::floor(wrapped * bins / two_pi)) + 1;
  if (bin > bins) bin = bins;
  return bin;
}

double bin_center(int bin, int bins) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return two_pi * (static_cast<double>(bin) - 0.5) / static_cast<double>(bins);
}

GateInstance make_zrot(int qubit, double theta, int bins) {
  require(qubit >= 1, "qubit index must be positive");
  const double wrapped = wrap_angle(theta);
  return GateInstance{GateId{GateKind::ZRot, qubit, bin_of_angle(wrapped, bins)}, wrapped};
}

GateInstance make_fhop(int qubit) {
  require(qubit >= 1, "qubit index must be positive");
  return GateInstance{GateId{GateKind::FHop, qubit, 0}, 0.0};
}

GateInstance inverse_gate(const GateInstance& gate, int bins) {
  if (gate.id.kind == GateKind::FHop) return gate;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return make_zrot(gate.id.qubit, two_pi - gate.theta, bins);
}

}  // namespace faces
