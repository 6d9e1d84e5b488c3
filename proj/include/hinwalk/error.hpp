#pragma once

#include <stdexcept>

namespace hinwalk {

// Invalid input data or a violated contract. The CLI reports these and exits
// with the data-error code; usage errors are the argument parser's business.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A distribution whose entire mass was absorbed by dangling nodes; entropy
// and perplexity are undefined for it.
class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

}  // namespace hinwalk
