#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lhc {

/// Bad argument values (sizes, ranges, ids out of bounds).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for the inputs.
class PreconditionViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Malformed serialized input. `offset()` is the byte offset of the problem.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

/// A configured cap (vertex count, product size, node budget) would be exceeded.
class ResourceLimit : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Wall-clock budget expired; the answer is unknown.
class SearchTimeout : public ResourceLimit {
  public:
    using ResourceLimit::ResourceLimit;
};

} // namespace lhc
