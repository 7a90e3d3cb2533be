#pragma once

#include <atomic>
#include <memory>

#include "rq/errors.hpp"

namespace rq {

/// Shared flag for cooperative cancellation of long-running symbolic work.
/// Copies observe the same flag; long loops poll it and throw CancelledError.
class CancelToken {
 public:
  CancelToken() : flag_(std::make_shared<std::atomic<bool>>(false)) {}

  void request_stop() const { flag_->store(true, std::memory_order_relaxed); }
  bool stop_requested() const { return flag_->load(std::memory_order_relaxed); }

 private:
  std::shared_ptr<std::atomic<bool>> flag_;
};

inline void throw_if_cancelled(const CancelToken* token) {
  if (token != nullptr && token->stop_requested()) throw CancelledError();
}

}  // namespace rq
