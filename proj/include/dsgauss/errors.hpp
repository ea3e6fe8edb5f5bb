#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsgauss {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input errors: the caller handed us something malformed. The CLI maps these
// to exit status 1.
class InputError : public Error {
 public:
  using Error::Error;
};

class SignatureMismatch : public InputError {
 public:
  SignatureMismatch() : InputError("SignatureMismatch: operands live in different ambient spaces") {}
};

class GradeError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError("ParseError at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class SchemaError : public InputError {
 public:
  explicit SchemaError(const std::string& what) : InputError("SchemaError: " + what) {}
};

class UnknownEntry : public InputError {
 public:
  explicit UnknownEntry(const std::string& name) : InputError("UnknownEntry: " + name) {}
};

class ConstraintViolation : public InputError {
 public:
  ConstraintViolation(const std::string& constraint, const std::string& detail)
      : InputError("ConstraintViolation: " + constraint + " (" + detail + ")"), constraint_(constraint) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

class UnboundParameter : public InputError {
 public:
  explicit UnboundParameter(const std::string& name) : InputError("UnboundParameter: " + name) {}
};

// Evaluation hit a point outside the domain of an elementary function.
class Singularity : public Error {
 public:
  using Error::Error;
};

class StencilOutsideDomain : public Error {
 public:
  using Error::Error;
};

// Geometric errors: the data is well formed but the surface does not satisfy
// the geometric preconditions. The CLI maps these to exit status 2.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class DegenerateFrame : public GeometryError {
 public:
  explicit DegenerateFrame(int index)
      : GeometryError("DegenerateFrame: light-like or vanishing pivot at index " + std::to_string(index)),
        index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

class NotInDeSitter : public GeometryError {
 public:
  explicit NotInDeSitter(double defect)
      : GeometryError("NotInDeSitter: |<x,x> - 1| = " + std::to_string(defect)), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

class NotSpacelike : public GeometryError {
 public:
  explicit NotSpacelike(const std::string& detail) : GeometryError("NotSpacelike: " + detail) {}
};

class ValidationError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace dsgauss
