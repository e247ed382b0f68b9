#include "safecast/error.hpp"
#include "safecast/select.hpp"

namespace safecast {

std::vector<Fold> time_series_folds(std::size_t n, const FoldPlan& plan) {
  if (plan.initial_train_size == 0 || plan.steps == 0 || plan.horizon == 0 ||
      plan.fold_stride == 0) {
    raise(ErrorKind::InvalidArgument, "fold plan sizes must all be positive");
  }
  if (n <= plan.initial_train_size) {
    raise(ErrorKind::TooShort, "series of length " + std::to_string(n) +
                                   " leaves no test data after " +
                                   std::to_string(plan.initial_train_size) + " training points");
  }
  std::vector<Fold> folds;
  for (std::size_t k = 0;; ++k) {
    const std::size_t a = plan.initial_train_size + k * plan.steps;
    if (a >= n) break;
    std::size_t b = a + plan.horizon;
    const bool incomplete = b > n;
    if (incomplete) {
      if (!plan.allow_incomplete_final) break;
      b = n;
    }
    if (k % plan.fold_stride == 0) folds.push_back({k, a, b});
    if (incomplete) break;
  }
  if (folds.empty()) {
    raise(ErrorKind::TooShort, "no complete fold of horizon " + std::to_string(plan.horizon) +
                                   " fits in " + std::to_string(n) + " points");
  }
  return folds;
}

std::vector<Fold> one_step_folds(std::size_t n, std::size_t initial_train_size) {
  FoldPlan plan;
  plan.initial_train_size = initial_train_size;
  plan.steps = 1;
  plan.horizon = 1;
  return time_series_folds(n, plan);
}

}  // namespace safecast
