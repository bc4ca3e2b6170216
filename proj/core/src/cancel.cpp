#include "homascend/cancel.hpp"

namespace homascend {

CancelToken CancelToken::with_deadline(std::chrono::steady_clock::duration d) {
  CancelToken t;
  t.s_ = std::make_shared<State>();
  t.s_->deadline = std::chrono::steady_clock::now() + d;
  return t;
}

void CancelToken::cancel() const {
  if (s_) s_->flag = true;
}

bool CancelToken::cancelled() const {
  if (!s_) return false;
  if (s_->flag) return true;
  if (s_->deadline && std::chrono::steady_clock::now() > *s_->deadline) {
    s_->flag = true;
    return true;
  }
  return false;
}

void CancelToken::check() const {
  if (cancelled()) throw ResourceExceeded("computation cancelled (deadline or explicit cancel)");
}

}  // namespace homascend
