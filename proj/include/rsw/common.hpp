#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rsw {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Thrown when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridMismatchError : public PreconditionError {
 public:
  GridMismatchError() : PreconditionError("grid mismatch between operands") {}
};

// A time integration gave up; step is the index of the step that went bad.
class RuntimeAbort : public std::runtime_error {
 public:
  RuntimeAbort(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

using Rng = std::mt19937_64;

// Uniform in [0,1). Built from raw bits so results do not depend on the
// standard library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace rsw
