#pragma once

#include <string>
#include <utility>
#include <vector>

namespace trimod {

// Outcome of a decision procedure: a negative verdict names the failing
// condition and the ids that witness it.
struct Verdict {
  bool ok = true;
  std::string reason;
  std::vector<std::string> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string reason, std::vector<std::string> witness = {}) {
    return Verdict{false, std::move(reason), std::move(witness)};
  }

  explicit operator bool() const { return ok; }
};

}  // namespace trimod
