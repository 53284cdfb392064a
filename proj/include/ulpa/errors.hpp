#ifndef ULPA_ERRORS_HPP
#define ULPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ulpa {

// Malformed input data (bad literals, non-prime moduli, oversized periods, ...).
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownVertex : InvalidInput {
  using InvalidInput::InvalidInput;
};

// A stated hypothesis of an operation does not hold; `which` names it.
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& w)
      : std::runtime_error("precondition violated: " + w), which(w) {}
  std::string which;
};

struct NotFiniteAcyclic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotALeftIdeal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotARightIdeal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotGraded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHomogeneous : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotIdempotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ulpa

#endif
