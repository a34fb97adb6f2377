#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace vasnet {

// Fixed set of worker threads running bulk-synchronous phases: run(task)
// calls task(rank) once per rank and returns after all ranks finished, so
// consecutive run() calls are separated by a barrier. Rank 0 executes on the
// calling thread.
class ThreadTeam {
 public:
  explicit ThreadTeam(int workers);
  ~ThreadTeam();
  ThreadTeam(const ThreadTeam&) = delete;
  ThreadTeam& operator=(const ThreadTeam&) = delete;

  int size() const { return size_; }
  void run(const std::function<void(int)>& task);

 private:
  void worker_loop(int rank);

  int size_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* task_ = nullptr;
  long generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace vasnet
