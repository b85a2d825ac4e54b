#pragma once

#include <stdexcept>
#include <string>

namespace ringcover {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad ring spec strings, violated preconditions, mixed
/// characteristic and the like.
class invalid_argument : public error {
 public:
  using error::error;
};

/// A configured size cap would be exceeded.
class cap_exceeded : public error {
 public:
  using error::error;
};

/// Parameters lie outside the range where a construction is defined.
class out_of_regime : public error {
 public:
  using error::error;
};

/// A verification or certificate check failed.
class verification_failure : public error {
 public:
  using error::error;
};

}  // namespace ringcover
