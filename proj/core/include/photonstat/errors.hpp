#pragma once

#include <stdexcept>

namespace photonstat {

/// Base class for all library failures.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid state parameters or malformed arguments.
struct parameter_error : error {
  using error::error;
};

/// A formula was evaluated outside its mathematical domain.
struct domain_error : error {
  using error::error;
};

/// The requested state has zero norm; no distribution exists.
struct zero_norm_error : error {
  using error::error;
};

/// A truncated-basis computation cannot be trusted at the given dimension.
struct truncation_error : error {
  using error::error;
};

}  // namespace photonstat
