#ifndef SHAPLIT_ERRORS_HPP
#define SHAPLIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shaplit {

// Enumeration budget exceeded (use a partition / the explain path instead).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data (files, datasets, configs).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Training diverged; `step` is the offending optimizer step.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& what, long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step(step) {}
  long step;
};

// External predictor protocol failures. The run aborts rather than imputing.
class ProtocolError : public std::runtime_error {
 public:
  enum class Kind { Spawn, Exit, Timeout, Malformed, OutOfRange, IdMismatch };
  ProtocolError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  Kind kind;
};

}  // namespace shaplit

#endif
