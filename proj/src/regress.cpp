#include "safecast/regress.hpp"

#include <cmath>
#include <string>

#include "safecast/error.hpp"
#include "safecast/kernels.hpp"

namespace safecast {

namespace {

class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

// LU factorisation with partial pivoting (first maximal |pivot| wins ties).
struct LU {
  SquareMatrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LU factorize(SquareMatrix a) {
  const std::size_t n = a.size();
  LU out{std::move(a), std::vector<std::size_t>(n), false};
  SquareMatrix& m = out.lu;
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::fabs(m(r, k)) > best) {
        best = std::fabs(m(r, k));
        p = r;
      }
    }
    if (best == 0.0) {
      out.singular = true;
      return out;
    }
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      std::swap(out.perm[k], out.perm[p]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = m(r, k) / m(k, k);
      m(r, k) = f;
      if (f == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return out;
}

std::vector<double> solve(const LU& f, std::span<const double> b) {
  const SquareMatrix& m = f.lu;
  const std::size_t n = m.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= m(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

double norm1(const SquareMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) s += std::fabs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

// ||A||_1 * ||A^-1||_1 with the inverse formed column by column.
double condition_1(const SquareMatrix& a, const LU& f) {
  const std::size_t n = a.size();
  std::vector<double> e(n, 0.0);
  double inv_norm = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    const std::vector<double> col = solve(f, e);
    e[c] = 0.0;
    double s = 0.0;
    for (double v : col) s += std::fabs(v);
    if (!std::isfinite(s)) return INFINITY;
    inv_norm = std::max(inv_norm, s);
  }
  return norm1(a) * inv_norm;
}

}  // namespace

RegressorSpec RegressorSpec::ridge(double lambda, std::uint64_t seed) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    raise(ErrorKind::InvalidArgument, "ridge lambda must be finite and >= 0");
  }
  return {RegressorKind::Ridge, lambda, seed};
}

FittedRegressor fit_regressor(const RegressorSpec& spec, const FeatureMatrix& x,
                              std::span<const double> y) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (n == 0) raise(ErrorKind::TooShort, "regression needs at least one row");
  if (y.size() != n) {
    raise(ErrorKind::DimensionMismatch, "feature matrix has " + std::to_string(n) +
                                            " rows but target has " + std::to_string(y.size()));
  }
  if (spec.kind == RegressorKind::Ridge && !(spec.lambda >= 0.0)) {
    raise(ErrorKind::InvalidArgument, "ridge lambda must be >= 0");
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!std::isfinite(y[r])) {
      raise(ErrorKind::NonFiniteValue, "regression target row " + std::to_string(r) + " is not finite");
    }
    for (std::size_t c = 0; c < p; ++c) {
      if (!std::isfinite(x(r, c))) {
        raise(ErrorKind::NonFiniteValue, "feature (" + std::to_string(r) + ", " +
                                             std::to_string(c) + ") is not finite");
      }
    }
  }

  // Column-major design with a leading column of ones for the intercept.
  const std::size_t k = p + 1;
  std::vector<std::vector<double>> design(k, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    design[0][r] = 1.0;
    for (std::size_t c = 0; c < p; ++c) design[c + 1][r] = x(r, c);
  }

  SquareMatrix gram(k);
  std::vector<double> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double v = kernels::dot(design[i], design[j]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
    rhs[i] = kernels::dot(design[i], y);
  }
  const double penalty = spec.kind == RegressorKind::Ridge ? spec.lambda : 0.0;
  for (std::size_t i = 1; i < k; ++i) gram(i, i) += penalty;

  const bool check_condition = penalty == 0.0;
  std::vector<double> scale(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (gram(i, i) == 0.0) {
      if (check_condition) {
        raise(ErrorKind::SingularSystem, "feature column " + std::to_string(i - 1) + " is identically zero");
      }
      scale[i] = 1.0;
    } else {
      scale[i] = 1.0 / std::sqrt(gram(i, i));
    }
  }
  SquareMatrix scaled(k);
  std::vector<double> scaled_rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) scaled(i, j) = scale[i] * gram(i, j) * scale[j];
    scaled_rhs[i] = scale[i] * rhs[i];
  }

  const LU lu = factorize(scaled);
  if (lu.singular) {
    raise(ErrorKind::SingularSystem, "normal matrix is exactly singular");
  }
  if (check_condition) {
    const double cond = condition_1(scaled, lu);
    if (!(cond <= kSingularCondition)) {
      raise(ErrorKind::SingularSystem,
            "normal matrix condition estimate " + std::to_string(cond) + " exceeds 1e12");
    }
  }
  const std::vector<double> z = solve(lu, scaled_rhs);

  FittedRegressor out;
  out.feature_count = p;
  out.intercept = z[0] * scale[0];
  out.coefficients.resize(p);
  for (std::size_t c = 0; c < p; ++c) out.coefficients[c] = z[c + 1] * scale[c + 1];
  return out;
}

double predict_regressor(const FittedRegressor& r, std::span<const double> x) {
  if (x.size() != r.feature_count) {
    raise(ErrorKind::DimensionMismatch, "regressor expects " + std::to_string(r.feature_count) +
                                            " features, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      raise(ErrorKind::NonFiniteValue, "feature " + std::to_string(i) + " is not finite");
    }
  }
  return r.intercept + kernels::dot(r.coefficients, x);
}

}  // namespace safecast
