#pragma once

#include <span>
#include <vector>

#include "finnet/matrix.hpp"

namespace finnet {

/// LU factorisation with partial (row) pivoting of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  /// A zero pivot was met; solve() and inverse() are then undefined.
  bool singular() const noexcept { return singular_; }

  std::vector<double> solve(std::span<const double> rhs) const;
  Matrix inverse() const;
  double determinant() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
};

double norm1(const Matrix& a);

/// ‖A‖₁·‖A⁻¹‖₁; +inf for singular matrices.
double condition_number_1(const Matrix& a);

}  // namespace finnet
