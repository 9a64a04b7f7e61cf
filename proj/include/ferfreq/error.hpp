#pragma once

#include <stdexcept>
#include <string>

namespace ferfreq {

// Error categories raised by the pipeline. The CLI maps each category to a
// single-line "error: <category>: <message>" on stderr and a distinct exit
// code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument or out-of-contract input (dimensions, ratios, band limits).
struct ParameterError : Error {
  using Error::Error;
};

// Filesystem problems: unreadable directories, unwritable outputs.
struct IoError : Error {
  using Error::Error;
};

// Undecodable or corrupt file content (images, feature stores, models).
struct FormatError : Error {
  using Error::Error;
};

// A corpus scan that matched no usable files.
struct EmptyCorpusError : Error {
  using Error::Error;
};

// Degenerate or diverging model training.
struct TrainingError : Error {
  using Error::Error;
};

}  // namespace ferfreq
