#pragma once

#include <string>
#include <vector>

namespace gabriel {

enum class Status { Verified, Failed, Unchecked };
std::string to_string(Status s);

/// Outcome of a bounded check: the bound it was verified to, or a concrete witness of failure.
struct Check {
  Status status = Status::Unchecked;
  std::string bound;
  std::vector<std::string> witness;

  static Check verified(std::string bound) { return {Status::Verified, std::move(bound), {}}; }
  static Check failed(std::vector<std::string> witness, std::string bound = {}) {
    return {Status::Failed, std::move(bound), std::move(witness)};
  }
  bool ok() const { return status == Status::Verified; }
  std::string to_string() const;
};

}  // namespace gabriel
