#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace xxgap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model or operation parameter (probability out of range, m >= n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds what a routine can enumerate or store.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix dimension mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Coupling too weak for the MWIS ground state to be independent.
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Empty or otherwise unusable record set for a statistic.
class StatisticsError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure. Carries the anneal parameter and, once known, the instance id.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double s, std::optional<std::string> instance_id = std::nullopt)
      : Error(format(what, s, instance_id)), what_(what), s_(s), instance_id_(std::move(instance_id)) {}

  double s() const noexcept { return s_; }
  const std::optional<std::string>& instance_id() const noexcept { return instance_id_; }

  NumericalError with_instance(std::string id) const { return NumericalError(what_, s_, std::move(id)); }

 private:
  static std::string format(const std::string& what, double s, const std::optional<std::string>& id) {
    std::string msg = what + " (s=" + std::to_string(s);
    if (id) msg += ", instance " + *id;
    return msg + ")";
  }

  std::string what_;
  double s_;
  std::optional<std::string> instance_id_;
};

}  // namespace xxgap
