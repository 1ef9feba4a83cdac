#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace faces {

/// Exact fourth root of unity i^k, k in 0..3. Phases here are always
/// quarter turns, so they are tracked as an integer exponent and never as
/// floating point.
class QuarterPhase {
public:
  constexpr QuarterPhase() = default;
  explicit constexpr QuarterPhase(int exponent) : exponent_(((exponent % 4) + 4) % 4) {}

  constexpr int exponent() const { return exponent_; }
  constexpr QuarterPhase operator*(QuarterPhase other) const {
    return QuarterPhase(exponent_ + other.exponent_);
  }
  constexpr QuarterPhase inverse() const { return QuarterPhase(-exponent_); }
  constexpr bool operator==(const QuarterPhase&) const = default;

  std::complex<double> value() const {
    switch (exponent_) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  std::string to_string() const;

private:
  int exponent_ = 0;
};

/// Ordered product of Majorana operators indexed by an ascending subset of
/// {1..2n}.
struct MajoranaMonomial {
  MajoranaMonomial(int modes, std::vector<int> support);

  int modes;
  std::vector<int> support;

  int degree() const { return static_cast<int>(support.size()); }
  bool operator==(const MajoranaMonomial&) const = default;
};

/// n-qubit Pauli operator: value = phase * sigma_label, where sigma_label
/// is the Hermitian Pauli i^(a.b) X^a Z^b given by the bit label (a, b).
class PauliString {
public:
  PauliString(int qubits, std::vector<std::uint8_t> x_bits, std::vector<std::uint8_t> z_bits,
              QuarterPhase phase = QuarterPhase());

  static PauliString identity(int qubits);
  /// Label with a single non-identity factor; op is one of 'X', 'Y', 'Z'.
  static PauliString single(int qubits, int qubit, char op);
  static PauliString from_packed(int qubits, std::uint64_t label);
  /// Parse a label like "XIZY" (qubit 1 first). No phase.
  static PauliString from_label(const std::string& label);

  int qubits() const { return qubits_; }
  const std::vector<std::uint8_t>& x_bits() const { return x_; }
  const std::vector<std::uint8_t>& z_bits() const { return z_; }
  QuarterPhase phase() const { return phase_; }

  bool x_bit(int qubit) const { return x_[static_cast<std::size_t>(qubit - 1)] != 0; }
  bool z_bit(int qubit) const { return z_[static_cast<std::size_t>(qubit - 1)] != 0; }

  /// Exact operator product (this * other), phase included.
  PauliString operator*(const PauliString& other) const;

  bool same_label(const PauliString& other) const;
  /// Non-identity support size of the label.
  int weight() const;

  /// Packed label: qubit j contributes a_j at bit 2(j-1) and b_j at bit
  /// 2(j-1)+1. Requires n <= 32.
  std::uint64_t packed_label() const;
  std::string label_string() const;

private:
  int qubits_;
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  QuarterPhase phase_;
};

/// Jordan-Wigner image of a Majorana monomial: returns the Pauli string
/// with phase p such that gamma_alpha = p * sigma_label.
PauliString jw_pauli_of_monomial(const MajoranaMonomial& alpha);

struct MonomialWithPhase {
  MajoranaMonomial monomial;
  /// sigma = phase * gamma_alpha, with sigma the input operator (its own
  /// phase included).
  QuarterPhase phase;
};

/// Inverse direction of the Jordan-Wigner correspondence: the unique
/// monomial proportional to a Pauli string, with the exact proportionality
/// phase.
MonomialWithPhase monomial_of_pauli(const PauliString& sigma);

// ---------------------------------------------------------------------------
// Gate identities

enum class GateKind { ZRot, FHop };

/// Identity of a noise-carrying gate parameter: a Z rotation on a qubit
/// within one angle bin, or the fixed two-qubit hop gate G(H,H) on a
/// nearest-neighbour pair.
struct GateId {
  GateKind kind = GateKind::ZRot;
  int qubit = 1;
  int bin = 1;  // 1..N for ZRot, 0 for FHop

  auto operator<=>(const GateId&) const = default;

  std::string to_string() const;
  static GateId from_string(const std::string& text);
};

struct GateIdHash {
  std::size_t operator()(const GateId& id) const {
    return (static_cast<std::size_t>(id.kind) << 48) ^
           (static_cast<std::size_t>(id.qubit) << 24) ^ static_cast<std::size_t>(id.bin);
  }
};

/// A gate occurrence in a circuit; theta is meaningful for Z rotations only
/// and always lies inside the bin recorded in the id.
struct GateInstance {
  GateId id;
  double theta = 0.0;

  bool operator==(const GateInstance&) const = default;
};

/// Wrap an angle into [0, 2pi).
double wrap_angle(double theta);
/// Bin index 1..bins for theta in [0, 2pi).
int bin_of_angle(double theta, int bins);
/// Centre angle of bin k.
double bin_center(int bin, int bins);

GateInstance make_zrot(int qubit, double theta, int bins);
GateInstance make_fhop(int qubit);
/// Exact inverse gate: hop gates are self-inverse, a rotation by theta is
/// inverted by the rotation by 2pi - theta (which generally lives in a
/// different bin).
GateInstance inverse_gate(const GateInstance& gate, int bins);

}  // namespace faces
