#pragma once

#include <stdexcept>
#include <string>

namespace dqd {

/// Base of every error raised by the library. `code()` is a short
/// machine-readable tag the CLI reports alongside the message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string &code() const noexcept { return code_; }

private:
  std::string code_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string &message)
      : Error("config", message) {}
};

/// Well-geometry failures: "degenerate-geometry", "infeasible-target",
/// "non-convergence".
class GeometryError : public Error {
public:
  GeometryError(std::string code, const std::string &message,
                double residual = 0.0)
      : Error(std::move(code), message), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class IntegrationError : public Error {
public:
  IntegrationError(const std::string &message, double abscissa)
      : Error("integration", message), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

private:
  double abscissa_;
};

/// Degenerate overlap, normalization breakdown, eigensolver failure,
/// grid too small.
class NumericalError : public Error {
public:
  NumericalError(std::string code, const std::string &message)
      : Error(std::move(code), message) {}
};

} // namespace dqd
