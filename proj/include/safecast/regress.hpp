#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace safecast {

/// Dense row-major matrix of features.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class RegressorKind { OLS, Ridge };

struct RegressorSpec {
  RegressorKind kind = RegressorKind::OLS;
  double lambda = 0.0;  // Ridge penalty on the coefficients, never the intercept
  std::uint64_t seed = 0;

  static RegressorSpec ols(std::uint64_t seed = 0) { return {RegressorKind::OLS, 0.0, seed}; }
  static RegressorSpec ridge(double lambda, std::uint64_t seed = 0);
};

struct FittedRegressor {
  std::vector<double> coefficients;
  double intercept = 0.0;
  std::size_t feature_count = 0;

  bool operator==(const FittedRegressor&) const = default;
};

/// Scaled normal matrix of an OLS system with 1-norm condition estimate above
/// this is treated as singular.
inline constexpr double kSingularCondition = 1e12;

/// Least squares with intercept via the normal equations. The system is
/// Jacobi-scaled, then solved by Gaussian elimination with partial pivoting in
/// a fixed order, so identical inputs give bit-identical coefficients.
FittedRegressor fit_regressor(const RegressorSpec& spec, const FeatureMatrix& x,
                              std::span<const double> y);

double predict_regressor(const FittedRegressor& r, std::span<const double> x);

}  // namespace safecast
