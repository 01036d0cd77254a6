#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace circumlab {

/// Broad failure classes; the CLI maps each one to an exit code.
enum class ErrorClass {
  usage,       // bad parameters or unparseable input
  degenerate,  // geometric input outside the admissible set
  numerical,   // iterative/linear-algebra failure
  audit,       // an asserted inequality did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

#define CIRCUMLAB_DEFINE_ERROR(Name, Cls)                                       \
  class Name : public Error {                                                   \
   public:                                                                      \
    explicit Name(const std::string& what) : Error(ErrorClass::Cls, what) {}    \
  };

CIRCUMLAB_DEFINE_ERROR(DegenerateTriangle, degenerate)
CIRCUMLAB_DEFINE_ERROR(InvalidThreshold, usage)
CIRCUMLAB_DEFINE_ERROR(UnsupportedDegree, usage)
CIRCUMLAB_DEFINE_ERROR(InconsistentSpec, usage)
CIRCUMLAB_DEFINE_ERROR(UnknownField, usage)
CIRCUMLAB_DEFINE_ERROR(InvalidFamily, usage)
CIRCUMLAB_DEFINE_ERROR(InvalidExponent, usage)
CIRCUMLAB_DEFINE_ERROR(NotApplicable, usage)
CIRCUMLAB_DEFINE_ERROR(IllConditioned, numerical)

#undef CIRCUMLAB_DEFINE_ERROR

/// Mesh text could not be parsed; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorClass::usage, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NonConforming : public Error {
 public:
  explicit NonConforming(const std::string& what) : Error(ErrorClass::degenerate, what) {}
};

/// CG ran out of iterations. The residual history is kept for diagnosis.
class NoConvergence : public Error {
 public:
  NoConvergence(int max_iter, std::vector<double> history);
  const std::vector<double>& residual_history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace circumlab
