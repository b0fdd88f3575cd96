#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cascademd {

// Fork-join pool for the colored force phases.  run(fn, n) executes
// fn(0..n-1), blocking until all calls finish.  With a single worker the
// calls run inline on the caller in ascending order, so a one-worker pool
// is exactly the serial pass.
class WorkerPool {
 public:
  explicit WorkerPool(int workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workers() const { return workers_; }

  void run(const std::function<void(int)>& fn, int n);

 private:
  void worker_loop();

  int workers_ = 1;
  std::vector<std::thread> threads_;

  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(int)>* fn_ = nullptr;
  int total_ = 0;
  int next_ = 0;
  int done_ = 0;
  long generation_ = 0;
  bool stop_ = false;
};

}  // namespace cascademd
