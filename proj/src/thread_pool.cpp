#include "thread_pool.hpp"

#include <algorithm>
#include <cstdlib>

namespace loopyspectra {

ThreadPool::ThreadPool(unsigned size) : size_(std::max(1u, size)) {
  workers_.reserve(size_ - 1);
  for (unsigned i = 1; i < size_; ++i) {
    workers_.emplace_back([this, i] { worker_loop(i); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (std::thread& t : workers_) t.join();
}

void ThreadPool::worker_loop(unsigned index) {
  std::uint64_t seen = 0;
  for (;;) {
    const std::function<void(unsigned)>* job;
    {
      std::unique_lock<std::mutex> lock(mutex_);
      start_cv_.wait(lock, [&] { return stop_ || round_ != seen; });
      if (stop_) return;
      seen = round_;
      job = job_;
    }
    (*job)(index);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void ThreadPool::run(const std::function<void(unsigned)>& job) {
  if (workers_.empty()) {
    job(0);
    return;
  }
  {
    std::lock_guard<std::mutex> lock(mutex_);
    job_ = &job;
    pending_ = static_cast<unsigned>(workers_.size());
    ++round_;
  }
  start_cv_.notify_all();
  job(0);
  std::unique_lock<std::mutex> lock(mutex_);
  done_cv_.wait(lock, [&] { return pending_ == 0; });
}

std::pair<std::int64_t, std::int64_t> ThreadPool::chunk(std::int64_t total,
                                                        unsigned chunks,
                                                        unsigned i) {
  const std::int64_t q = total / chunks;
  const std::int64_t r = total % chunks;
  const std::int64_t begin =
      static_cast<std::int64_t>(i) * q + std::min<std::int64_t>(i, r);
  const std::int64_t len = q + (static_cast<std::int64_t>(i) < r ? 1 : 0);
  return {begin, begin + len};
}

unsigned configured_thread_count() {
  if (const char* env = std::getenv("LOOPY_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace loopyspectra
