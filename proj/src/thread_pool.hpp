#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace loopyspectra {

// Persistent worker pool for the sweep phases.  run() executes job(i) once
// for every worker index 0..size()-1, index 0 on the calling thread, and
// returns when all are done.  Jobs must not throw; callers that can fail
// capture their own exceptions.
class ThreadPool {
 public:
  explicit ThreadPool(unsigned size);
  ~ThreadPool();
  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  unsigned size() const { return size_; }

  void run(const std::function<void(unsigned)>& job);

  // Balanced contiguous split of [0, total) into `chunks` ranges; returns the
  // half-open range assigned to chunk i.
  static std::pair<std::int64_t, std::int64_t> chunk(std::int64_t total,
                                                     unsigned chunks,
                                                     unsigned i);

 private:
  void worker_loop(unsigned index);

  unsigned size_;
  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(unsigned)>* job_ = nullptr;
  std::uint64_t round_ = 0;
  unsigned pending_ = 0;
  bool stop_ = false;
};

// Worker count from LOOPY_SPECTRA_THREADS (positive integer), falling back
// to the hardware concurrency.
unsigned configured_thread_count();

}  // namespace loopyspectra
