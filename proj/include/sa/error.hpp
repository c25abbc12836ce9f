#pragma once

#include <stdexcept>
#include <string>

namespace sa {

// Base for all workbench errors so callers can catch one type at the CLI edge.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Caller passed arguments outside an operation's domain (bad index, mismatched
// dimensions, precondition not met).
class usage_error : public error {
public:
  explicit usage_error(const std::string& what) : error(what) {}
};

// The request is well-formed but exceeds a size or materialization budget.
class capacity_error : public error {
public:
  explicit capacity_error(const std::string& what) : error(what) {}
};

// Input data failed structural validation (malformed JSON, out-of-range cell,
// inconsistent tables).
class parse_error : public error {
public:
  explicit parse_error(const std::string& what) : error(what) {}
};

// A construction's internal consistency check failed on the given input
// (e.g. a carrier that is not closed under the operations).
class integrity_error : public error {
public:
  explicit integrity_error(const std::string& what) : error(what) {}
};

// An operation hit a mathematically degenerate case it cannot represent,
// e.g. a homomorphism target over an empty base.
class degenerate_error : public error {
public:
  explicit degenerate_error(const std::string& what) : error(what) {}
};

}  // namespace sa
