#pragma once

#include <stdexcept>
#include <string>

namespace hullkit {

/// Input data failed structural validation (bad loop, malformed file, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A query point coincides with the link (or a construction degenerates there).
/// Callers are expected to perturb the query and retry.
class DegenerateQueryError : public std::runtime_error {
public:
  explicit DegenerateQueryError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be parsed; message carries path and location context.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hullkit
