#ifndef TSGEVAL_ERROR_HPP_
#define TSGEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tsgeval {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kInput = 1,
  kNumerical = 2,
  kDegenerateTraining = 3,
};

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Malformed files, ragged rows, bad arguments, violated preconditions.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(what, ExitCode::kInput) {}
};

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public FormatError {
 public:
  using FormatError::FormatError;
};

class EmptyInputError : public FormatError {
 public:
  using FormatError::FormatError;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(what, ExitCode::kNumerical) {}
};

class DegenerateTrainingError : public Error {
 public:
  explicit DegenerateTrainingError(const std::string& what)
      : Error(what, ExitCode::kDegenerateTraining) {}
};

// Non-finite loss during training. Reported with the numerical exit code.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, int epoch)
      : NumericalError(what), epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace tsgeval

#endif  // TSGEVAL_ERROR_HPP_
