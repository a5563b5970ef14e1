#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace frolip {

// Coarse error classes; the CLI maps them onto exit codes 2, 3 and 4.
enum class ErrorKind { Parse, Resource, Domain };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string tag, const std::string& message)
      : std::runtime_error(tag + ": " + message), kind_(kind), tag_(std::move(tag)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Machine-readable name, e.g. "NoHalfSpace" or "DirectionOutsideCone".
  const std::string& tag() const noexcept { return tag_; }

 private:
  ErrorKind kind_;
  std::string tag_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(ErrorKind::Parse, "ParseError", message) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message)
      : Error(ErrorKind::Resource, "ResourceLimit", message) {}
};

class DomainError : public Error {
 public:
  DomainError(std::string tag, const std::string& message)
      : Error(ErrorKind::Domain, std::move(tag), message) {}
};

}  // namespace frolip
