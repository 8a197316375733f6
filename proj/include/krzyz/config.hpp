#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace krzyz {

// Central numerical tolerances. Every zero test, boundary test and sup-norm
// slack in the library routes through this record so that a single change
// retunes the whole pipeline.
template <class Scalar = double>
struct Tol {
  // |x| below this is treated as an exact zero.
  static constexpr Scalar zero = Scalar(1e-14);
  // Sup-norm checks on |f| <= 1 allow this much truncation slack.
  static constexpr Scalar norm_slack = Scalar(1e-9);
  // A boundary sup within this of 1 counts as "on the boundary".
  static constexpr Scalar boundary = Scalar(1e-12);
};

// Default truncation order for series algebra.
inline constexpr Eigen::Index kDefaultOrder = 256;

// Dense boundary sampling used for sup norms and winding numbers.
inline constexpr int kBoundarySamples = 4096;

// Base class for the library's contract violations.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace krzyz
