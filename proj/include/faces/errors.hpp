#pragma once

#include <stdexcept>
#include <string>

namespace faces {

/// A gate parameter cannot be learned from the supplied circuit collection
/// (design matrix rank deficiency, possibly per degree sector).
class IdentifiabilityError : public std::runtime_error {
public:
  explicit IdentifiabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The cutoff filter removed enough rows to lose column rank.
class CutoffRankError : public std::runtime_error {
public:
  explicit CutoffRankError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace faces
