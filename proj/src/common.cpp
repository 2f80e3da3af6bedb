#include "common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace prank {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kUnknownTuple: return "UnknownTuple";
    case ErrorCode::kProbabilityConstraint: return "ProbabilityConstraint";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kInvalidTree: return "InvalidTree";
    case ErrorCode::kDegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kZeroProbability: return "ZeroProbability";
    case ErrorCode::kInconsistentPotentials: return "InconsistentPotentials";
    case ErrorCode::kShape: return "ShapeError";
    case ErrorCode::kMismatchedK: return "MismatchedK";
    case ErrorCode::kUnsupportedModel: return "UnsupportedModel";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
  }
  return "Unknown";
}

std::size_t worker_count() {
  static const std::size_t count = [] {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PRANK_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return hw;
  }();
  return count;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace prank
