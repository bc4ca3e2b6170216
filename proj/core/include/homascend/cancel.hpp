#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>

namespace homascend {

/// Thrown when a computation exceeds a caller-imposed bound (deadline,
/// explicit cancellation, or a size limit).
class ResourceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cooperative cancellation. Copies share state; a default token never fires.
class CancelToken {
 public:
  CancelToken() = default;
  static CancelToken with_deadline(std::chrono::steady_clock::duration d);
  void cancel() const;
  bool cancelled() const;
  /// Throws ResourceExceeded once cancelled or past the deadline.
  void check() const;

 private:
  struct State {
    std::atomic<bool> flag{false};
    std::optional<std::chrono::steady_clock::time_point> deadline;
  };
  std::shared_ptr<State> s_;
};

}  // namespace homascend
