#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zzlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Hilbert space larger than the configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression hit an exact zero denominator.
class SingularParameter : public Error {
 public:
  using Error::Error;
};

/// The requested physical quantity has no unambiguous meaning at this
/// parameter point (mixed labels, vanishing amplitudes, identically zero ZZ).
class IllDefined : public Error {
 public:
  IllDefined(const std::string& what, std::vector<double> overlaps = {})
      : Error(what), overlaps_(std::move(overlaps)) {}

  const std::vector<double>& overlaps() const noexcept { return overlaps_; }

 private:
  std::vector<double> overlaps_;
};

class IntegratorFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace zzlab
