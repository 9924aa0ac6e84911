#pragma once

#include <stdexcept>
#include <string>

namespace dagdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnlaidOut : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class ExhaustedAttempts : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class NoValidAddition : public Error {
 public:
  using Error::Error;
};

class CanvasOverflow : public Error {
 public:
  using Error::Error;
};

class DegenerateHull : public Error {
 public:
  using Error::Error;
};

class UnknownElement : public Error {
 public:
  using Error::Error;
};

class EmptyGT : public Error {
 public:
  using Error::Error;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

class NoTargets : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents. Carries the record index when one applies.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, long record_index = -1)
      : Error(record_index >= 0 ? "record " + std::to_string(record_index) + ": " + what : what),
        record_index_(record_index) {}

  [[nodiscard]] long record_index() const noexcept { return record_index_; }

 private:
  long record_index_;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace dagdiff
