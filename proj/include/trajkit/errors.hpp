#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trajkit {

enum class Status {
  Ok = 0,
  InvalidArgument,
  EmptyPath,
  ValidationFailed,
  Unsplittable,
  NonConvergence,
  InfeasibleInitialSpeed,
  InfeasibleCap,
  StalledStep,
  EndpointCurvature,
  CoincidentConfigs,
};

const char* status_name(Status status);

/// Exception carrying a status code and, when meaningful, the path or corner
/// index the failure refers to.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

  Error(Status status, const std::string& message, std::size_t index = kNoIndex)
      : std::runtime_error(message), status_(status), index_(index) {}

  Status status() const { return status_; }
  std::size_t index() const { return index_; }

 private:
  Status status_;
  std::size_t index_;
};

}  // namespace trajkit
