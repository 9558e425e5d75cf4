#pragma once

#include <stdexcept>

namespace gke {

// A density functional integral failed to converge or is provably infinite.
class DivergedFunctionalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The sample cannot support the requested fit (e.g. zero variance).
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chain generation left the positive semi-axis.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-positive data in an input file.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gke
