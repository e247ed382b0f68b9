#include <cmath>
#include <numeric>
#include <random>

#include "safecast/forecast.hpp"
#include "safecast/preprocess.hpp"
#include "support.hpp"

using namespace safecast;
using testing::hourly;

namespace {

std::vector<double> ramp(std::size_t n) {
  std::vector<double> v(n);
  std::iota(v.begin(), v.end(), 0.0);
  return v;
}

FittedForecaster constant_model(double c, std::vector<double> residuals, std::size_t n_lags = 1) {
  return FittedForecaster{
      LagSet::range(1, static_cast<int>(n_lags)),
      FittedRegressor{std::vector<double>(n_lags, 0.0), c, n_lags},
      {},
      std::move(residuals),
      {Timestamp::from_civil(2025, 1, 1), Timestamp::from_civil(2025, 1, 1, 9)},
      Frequency::hours(1),
      std::vector<double>(n_lags, c),
      42,
      {},
  };
}

ExogMatrix calendar(Timestamp start, std::size_t rows) {
  const std::vector<Period> periods{Period("hour", 6, CalendarField::Hour, 0, 23),
                                    Period("dayofweek", 4, CalendarField::DayOfWeek, 0, 6)};
  const Frequency h = Frequency::hours(1);
  return build_exog({start, advance(start, h, static_cast<std::int64_t>(rows) - 1), h}, periods,
                    {parse_date("2025-01-01")});
}

}  // namespace

TEST_CASE("lag set") {
  CHECK(LagSet::range(1, 3).lags().size() == 3);
  CHECK(LagSet({2, 5}).max_lag() == 5);
  CHECK_RAISES(LagSet({}), ErrorKind::InvalidArgument);
  CHECK_RAISES(LagSet({0, 1}), ErrorKind::InvalidArgument);
  CHECK_RAISES(LagSet({2, 2}), ErrorKind::InvalidArgument);
  CHECK_RAISES(LagSet({3, 1}), ErrorKind::InvalidArgument);
}

TEST_CASE("lag matrix example") {
  const LagMatrix m = build_lag_matrix(hourly({1, 2, 3, 4, 5}), LagSet({1, 2}));
  REQUIRE(m.features.rows() == 3);
  REQUIRE(m.features.cols() == 2);
  const std::vector<std::vector<double>> expected{{2, 1}, {3, 2}, {4, 3}};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(m.features(r, c) == expected[r][c]);
  }
  CHECK(m.targets == std::vector<double>{3, 4, 5});
  CHECK(m.first_target == 2);
  CHECK_RAISES(build_lag_matrix(hourly({1, 2}), LagSet({2})), ErrorKind::TooShort);
  CHECK_RAISES(build_lag_matrix(hourly({1, 2, NAN, 4}), LagSet({1})), ErrorKind::NonFiniteValue);
}

TEST_CASE("lag matrix with the example exog has 1992 x 180 entries") {
  const TimeSeries y = synth_load(2160, 1);
  const ExogMatrix x = calendar(y.start(), 2160);
  const LagMatrix m = build_lag_matrix(y, LagSet::range(1, 168), &x);
  CHECK(m.features.rows() == 1992);
  CHECK(m.features.cols() == 180);
  CHECK(m.features(0, 167) == y[0]);
  CHECK(m.features(0, 168) == x.at(168, 0));
}

TEST_CASE("lag matrix picks exog rows by timestamp") {
  const TimeSeries y = hourly({1, 2, 3, 4}, Timestamp::from_civil(2025, 1, 1, 5));
  const ExogMatrix x(Timestamp::from_civil(2025, 1, 1), Frequency::hours(1), 12,
                     {{"row", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}});
  const LagMatrix m = build_lag_matrix(y, LagSet({1}), &x);
  CHECK(m.features(0, 1) == 6.0);  // target at 06:00
  CHECK(m.features(2, 1) == 8.0);
}

TEST_CASE("fill_feature_row matches the training rows") {
  const TimeSeries y = synth_load(300, 3);
  const LagSet lags({1, 2, 5, 24});
  const LagMatrix m = build_lag_matrix(y, lags);
  std::vector<double> row(lags.size());
  for (std::size_t r = 0; r < m.features.rows(); ++r) {
    const std::size_t t = m.first_target + r;
    fill_feature_row(y.values().subspan(t - 24, 24), lags, {}, row);
    for (std::size_t c = 0; c < row.size(); ++c) CHECK(row[c] == m.features(r, c));
  }
}

TEST_CASE("ols on a noise-free ramp") {
  const TimeSeries y = hourly(ramp(100));
  const FittedForecaster f = fit_forecaster(y, LagSet({1}), nullptr, RegressorSpec::ols(), {});
  for (double r : f.residuals) CHECK(std::fabs(r) < 1e-7);
  const std::vector<double> fc = predict_recursive(f, 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(fc[k] == doctest::Approx(100.0 + static_cast<double>(k)).epsilon(1e-8));
  CHECK(f.forecast_origin() == Timestamp::from_civil(2025, 1, 5, 4));
  // With two lags the lag difference equals the intercept column.
  CHECK_RAISES(fit_forecaster(y, LagSet({1, 2}), nullptr, RegressorSpec::ols(), {}), ErrorKind::SingularSystem);
}

TEST_CASE("ridge on constant data shrinks but fits") {
  const TimeSeries y = hourly(std::vector<double>(10, 5.0));
  const FittedForecaster f = fit_forecaster(y, LagSet({1}), nullptr, RegressorSpec::ridge(0.1), {});
  for (double r : f.residuals) CHECK(std::fabs(r) < 1.0);
}

TEST_CASE("fit rejects NaN") {
  std::vector<double> v = ramp(50);
  v[20] = NAN;
  CHECK_RAISES(fit_forecaster(hourly(v), LagSet({1}), nullptr, RegressorSpec::ols(), {}), ErrorKind::NonFiniteValue);
}

TEST_CASE("constant model is a fixed point") {
  const FittedForecaster f = constant_model(3.25, {0.0}, 3);
  CHECK(predict_recursive(f, 7) == std::vector<double>(7, 3.25));
}

TEST_CASE("all-zero exog columns are inert") {
  const TimeSeries y = synth_load(600, 8);
  const ExogMatrix x = calendar(y.start(), 600);  // holiday only in the first 24 rows
  const FittedForecaster f = fit_forecaster(y, LagSet::range(1, 48), &x, RegressorSpec::ols(), {});
  CHECK(f.regressor.feature_count == 48 + 12);
  CHECK(f.regressor.coefficients[48 + 10] == 0.0);
  CHECK(f.regressor.coefficients[48 + 11] != 0.0);
}

TEST_CASE("future exog contract") {
  const TimeSeries y = synth_load(400, 4);
  const ExogMatrix x = calendar(y.start(), 424);
  const TimeSeries train = y.slice_rows(0, 400);
  const FittedForecaster f = fit_forecaster(train, LagSet::range(1, 24), &x, RegressorSpec::ols(), {});
  const ExogMatrix future = x.slice_rows(400, 24);
  CHECK(predict_recursive(f, 24, &future).size() == 24);

  std::vector<ExogColumn> cols = future.columns();
  cols.pop_back();
  const ExogMatrix eleven(future.start(), future.freq(), 24, cols);
  CHECK_RAISES(predict_recursive(f, 24, &eleven), ErrorKind::ExogShape);
  CHECK_RAISES(predict_recursive(f, 24, nullptr), ErrorKind::ExogMissing);
  CHECK_RAISES(predict_recursive(f, 25, &future), ErrorKind::ExogShape);
  const ExogMatrix early = x.slice_rows(399, 24);
  CHECK_RAISES(predict_recursive(f, 24, &early), ErrorKind::AlignmentError);

  cols = future.columns();
  std::swap(cols[0], cols[1]);
  const ExogMatrix swapped(future.start(), future.freq(), 24, cols);
  CHECK_RAISES(predict_recursive(f, 24, &swapped), ErrorKind::ExogShape);

  const FittedForecaster plain = fit_forecaster(train, LagSet::range(1, 24), nullptr, RegressorSpec::ols(), {});
  CHECK_RAISES(predict_recursive(plain, 24, &future), ErrorKind::ExogShape);
}

TEST_CASE("recursion from an arbitrary origin") {
  const TimeSeries y = synth_load(500, 6);
  const FittedForecaster f = fit_forecaster(y, LagSet({1, 2, 24}), nullptr, RegressorSpec::ols(), {});
  CHECK(predict_recursive(f, 12) == predict_recursive_from(f, f.last_window, f.forecast_origin(), 12, nullptr));
  CHECK_RAISES(predict_recursive_from(f, std::vector<double>(3, 1.0), f.forecast_origin(), 2, nullptr),
               ErrorKind::DimensionMismatch);

  // Step 1 of the recursion is the regressor applied to the last window.
  std::vector<double> row(3);
  fill_feature_row(f.last_window, f.lags, {}, row);
  CHECK(predict_recursive(f, 1)[0] == predict_regressor(f.regressor, row));
}

TEST_CASE("bootstrap intervals") {
  const IntervalForecast zero = predict_interval(constant_model(2.0, {0.0, 0.0}), 6, nullptr, 0.9, 50);
  CHECK(zero.lower == zero.point);
  CHECK(zero.upper == zero.point);
  CHECK(zero.coverage == 0.9);

  const IntervalForecast pm = predict_interval(constant_model(10.0, {1.0, -1.0}), 1, nullptr, 0.9, 4000);
  CHECK(pm.point[0] == 10.0);
  CHECK(pm.lower[0] == doctest::Approx(9.0));
  CHECK(pm.upper[0] == doctest::Approx(11.0));

  CHECK_RAISES(predict_interval(constant_model(1.0, {}), 3, nullptr, 0.9, 10), ErrorKind::NoResiduals);
  CHECK_RAISES(predict_interval(constant_model(1.0, {1.0}), 3, nullptr, 1.0, 10), ErrorKind::InvalidArgument);
  CHECK_RAISES(predict_interval(constant_model(1.0, {1.0}), 3, nullptr, 0.9, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("bootstrap intervals are seeded and ordered") {
  const TimeSeries y = synth_load(800, 12);
  const FittedForecaster f = fit_forecaster(y, LagSet::range(1, 24), nullptr, RegressorSpec::ols(7), {});
  const IntervalForecast a = predict_interval(f, 24, nullptr, 0.8, 200);
  const IntervalForecast b = predict_interval(f, 24, nullptr, 0.8, 200);
  CHECK(a == b);
  CHECK(a.point == predict_recursive(f, 24));
  for (std::size_t k = 0; k < 24; ++k) {
    CHECK(a.lower[k] <= a.upper[k]);
    CHECK(a.lower[k] < a.point[k] + 1.0);
  }
  FittedForecaster g = f;
  g.seed = 8;
  CHECK_FALSE(predict_interval(g, 24, nullptr, 0.8, 200) == a);
}

TEST_CASE("synthetic load") {
  const TimeSeries s = synth_load(2160, 2026);
  CHECK(s.size() == 2160);
  CHECK(s.start() == Timestamp::from_civil(2025, 1, 1));
  CHECK(s.freq() == Frequency::hours(1));
  for (double v : s.values()) CHECK(std::isfinite(v));
  CHECK(synth_load(2160, 2026) == s);
  CHECK_FALSE(synth_load(2160, 2027) == s);

  SynthLoadParams quiet;
  quiet.noise_sd = 0.0;
  const TimeSeries clean = synth_load(48, 1, quiet);
  CHECK(clean[0] == doctest::Approx(47.5).epsilon(1e-12));
  // Saturday 2025-01-04 06:00: no weekday bonus, sine at its peak.
  const TimeSeries sat = synth_load(24 * 3 + 7, 1, quiet);
  const double trend = 2.0 * 78.0 / 78.0;
  CHECK(sat[78] == doctest::Approx(50.0 + trend + 4.0 * std::sin(2 * M_PI * 6 / 24 - M_PI / 2)));
}
