#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosim {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COSIM_DECLARE_ERROR(Name)        \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// vecmath
COSIM_DECLARE_ERROR(DimensionError);
COSIM_DECLARE_ERROR(DegenerateVectorError);
COSIM_DECLARE_ERROR(InvalidValueError);
COSIM_DECLARE_ERROR(UnknownMetricError);
COSIM_DECLARE_ERROR(EmptyPoolError);

// dataset
COSIM_DECLARE_ERROR(DuplicateIdError);

// alignment
COSIM_DECLARE_ERROR(WordNotFoundError);
COSIM_DECLARE_ERROR(AlignmentError);

// pipeline
COSIM_DECLARE_ERROR(MissingEmbeddingError);
COSIM_DECLARE_ERROR(InvalidWeightsError);
COSIM_DECLARE_ERROR(ConfigError);
COSIM_DECLARE_ERROR(PipelineError);
COSIM_DECLARE_ERROR(StandardizationError);

// evalmetrics
COSIM_DECLARE_ERROR(ZeroVarianceError);

// providers
COSIM_DECLARE_ERROR(BackendError);
COSIM_DECLARE_ERROR(ProtocolError);
COSIM_DECLARE_ERROR(IoError);

#undef COSIM_DECLARE_ERROR

/// Malformed input. `line()` is the 1-based line number in the source
/// stream, or 0 when the error is not tied to a line.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EncodingError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace cosim
