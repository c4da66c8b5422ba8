#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace greenberg {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Ring/group descriptor rejected; `token` is the offending slice of input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string token, std::size_t pos)
      : Error(what + " (at \"" + token + "\", offset " + std::to_string(pos) + ")"),
        token_(std::move(token)),
        pos_(pos) {}
  const std::string& token() const { return token_; }
  std::size_t position() const { return pos_; }

 private:
  std::string token_;
  std::size_t pos_;
};

/// Inversion requested for an element with zero residue.
class NonUnitError : public Error {
 public:
  explicit NonUnitError(std::string element)
      : Error("element is not a unit: " + element), element_(std::move(element)) {}
  const std::string& element() const { return element_; }

 private:
  std::string element_;
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

/// An enumeration or scan would exceed the configured size guard.
class SizeGuardError : public Error {
 public:
  SizeGuardError(const std::string& what, std::string size, std::uint64_t guard)
      : Error(what + ": size " + size + " exceeds guard " + std::to_string(guard)),
        size_(std::move(size)),
        guard_(guard) {}
  const std::string& size() const { return size_; }
  std::uint64_t guard() const { return guard_; }

 private:
  std::string size_;
  std::uint64_t guard_;
};

/// Operands from different rings, or dimension disagreements.
class MismatchError : public Error {
 public:
  explicit MismatchError(const std::string& what) : Error(what) {}
};

/// A checked internal identity failed; always a defect, never user error.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

/// Flag recovery certified that the input is not a Borel conjugate.
class NotBorelError : public Error {
 public:
  NotBorelError(const std::string& what, std::string witness)
      : Error(what + "; witness " + witness), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace greenberg
