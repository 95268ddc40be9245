#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "flowem/geometry.hpp"

namespace flowem {

/// Syntax error from the expression parser; `position` is a 0-based byte offset into the source.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, size_t position)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    size_t position() const { return position_; }

  private:
    size_t position_;
};

/// Evaluation hit a singular point (division by zero, sqrt/log outside domain,
/// non-finite intermediate). Carries the offending subexpression.
class ExprDomainError : public std::runtime_error {
  public:
    ExprDomainError(const std::string& message, std::string subexpression)
        : std::runtime_error(message + " in subexpression: " + subexpression),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const { return subexpression_; }

  private:
    std::string subexpression_;
};

/// Retarded-time iteration exceeded its cap; usually means the declared speed
/// bound is dishonest or the trajectory expression is pathological.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Query point lies on (or within epsilon of) the matter region for the listed sources.
class OnMatterError : public std::runtime_error {
  public:
    OnMatterError(std::string message, std::vector<Vec3> sources)
        : std::runtime_error(std::move(message)), sources_(std::move(sources)) {}

    const std::vector<Vec3>& sources() const { return sources_; }

  private:
    std::vector<Vec3> sources_;
};

/// Scene file or grid specification violates the schema; message carries the field path.
class SceneError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace flowem
