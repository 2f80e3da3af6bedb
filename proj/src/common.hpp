#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace prank {

using TupleId = std::int64_t;

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kSizeLimit,
  kUnknownTuple,
  kProbabilityConstraint,
  kInvalidModel,
  kInvalidTree,
  kDegreeBoundExceeded,
  kConfig,
  kZeroProbability,
  kInconsistentPotentials,
  kShape,
  kMismatchedK,
  kUnsupportedModel,
  kDegenerateSample,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Worker count used by fan-out loops. Reads PRANK_THREADS once (0 or unset
// means hardware concurrency).
std::size_t worker_count();

// Runs body(i) for i in [0, n). Each index must write only its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace prank
