#pragma once

#include <stdexcept>
#include <string>

namespace jtree {

/// A caller supplied data that violates an operation's preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method hit its iteration cap before its bounds met.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper, long iterations)
      : std::runtime_error(what), lower_(lower), upper_(upper), iterations_(iterations) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double lower_;
  double upper_;
  long iterations_;
};

}  // namespace jtree
