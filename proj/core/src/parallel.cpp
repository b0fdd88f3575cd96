#include "cascademd/parallel.h"

#include <stdexcept>

namespace cascademd {

WorkerPool::WorkerPool(int workers) : workers_(workers) {
  if (workers < 1) {
    throw std::invalid_argument("WorkerPool: need at least one worker");
  }
  threads_.reserve(static_cast<std::size_t>(workers - 1));
  for (int i = 1; i < workers; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lk(mu_);
    stop_ = true;
  }
  cv_start_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::run(const std::function<void(int)>& fn, int n) {
  if (n <= 0) return;
  if (workers_ == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  {
    std::lock_guard lk(mu_);
    fn_ = &fn;
    total_ = n;
    next_ = 0;
    done_ = 0;
    ++generation_;
  }
  cv_start_.notify_all();

  // the caller works too
  for (;;) {
    int i;
    {
      std::lock_guard lk(mu_);
      if (next_ >= total_) break;
      i = next_++;
    }
    fn(i);
    std::lock_guard lk(mu_);
    ++done_;
  }

  std::unique_lock lk(mu_);
  cv_done_.wait(lk, [this] { return done_ == total_; });
  fn_ = nullptr;
}

void WorkerPool::worker_loop() {
  long seen = 0;
  for (;;) {
    const std::function<void(int)>* fn = nullptr;
    {
      std::unique_lock lk(mu_);
      cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      fn = fn_;
    }
    for (;;) {
      int i;
      {
        std::lock_guard lk(mu_);
        // generation check: never grab tasks from a later run() with this
        // run's function pointer
        if (generation_ != seen || next_ >= total_) break;
        i = next_++;
      }
      (*fn)(i);
      std::lock_guard lk(mu_);
      ++done_;
      if (done_ == total_) cv_done_.notify_all();
    }
  }
}

}  // namespace cascademd
