#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

#include "safecast/cpe.hpp"
#include "safecast/csv.hpp"
#include "safecast/error.hpp"
#include "safecast/model_io.hpp"

namespace safecast::cli {

namespace {

struct Run {
  RunConfig config;
  audit::Clock clock;
  std::filesystem::path output_dir;
  std::filesystem::path log_dir;
};

Run prepare(const CommonOptions& opts) {
  Run run{opts.config ? load_config(*opts.config) : default_config(),
          opts.clock ? audit::fixed_clock(*opts.clock) : audit::system_clock(), {}, {}};
  run.output_dir = opts.output_dir.value_or(run.config.output_dir);
  run.log_dir = opts.log_dir.value_or(run.config.log_dir);
  return run;
}

// Reports errors as "error: <Name>: <detail>" and maps them to exit codes.
int guarded(Streams io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitContract;
  }
}

struct Data {
  TimeSeries series;
  ProvenanceRecord provenance;
};

std::string series_csv(const TimeSeries& s) {
  std::string out = "timestamp," + s.name() + "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += s.timestamp(i).iso() + "," + format_double(s[i]) + "\n";
  }
  return out;
}

Data load_data(const RunConfig& c, const audit::Clock& clock) {
  if (c.input) {
    CsvTable table = load_csv(*c.input);
    if (table.names.size() != 1) {
      raise(ErrorKind::ParseError, "input CSV must have exactly one value column besides 'timestamp', found " +
                                       std::to_string(table.names.size()));
    }
    TimeSeries s = table.series(table.names.front());
    return {std::move(s), make_provenance("file:" + c.input->generic_string(), table.raw, clock())};
  }
  SynthLoadParams params;
  params.start = c.synthetic.start;
  params.noise_sd = c.synthetic.noise_sd;
  TimeSeries s = synth_load(c.synthetic.n, c.synthetic.seed, params);
  const std::string url = "synthetic:synth_load?n=" + std::to_string(c.synthetic.n) +
                          "&seed=" + std::to_string(c.synthetic.seed) +
                          "&noise_sd=" + format_double(c.synthetic.noise_sd) +
                          "&start=" + c.synthetic.start.iso();
  const std::string raw = series_csv(s);
  return {std::move(s), make_provenance(url, raw, clock())};
}

ExogMatrix calendar(const RunConfig& c, Timestamp start, Timestamp end, Frequency freq) {
  return build_exog(IndexRange{start, end, freq}, c.periods, c.holidays, c.weekend_days);
}

std::string forecast_csv(const IntervalForecast& fc, Timestamp origin, Frequency freq) {
  std::string out = "timestamp,point,lower,upper\n";
  for (std::size_t k = 0; k < fc.point.size(); ++k) {
    out += advance(origin, freq, static_cast<std::int64_t>(k)).iso() + "," +
           format_double(fc.point[k]) + "," + format_double(fc.lower[k]) + "," +
           format_double(fc.upper[k]) + "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) raise(ErrorKind::IoError, "cannot create " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::IoError, "cannot write " + path.string());
  out << bytes;
  out.flush();
  if (!out) raise(ErrorKind::IoError, "write to " + path.string() + " failed");
}

std::string regressor_name(const RegressorSpec& spec) {
  return spec.kind == RegressorKind::OLS ? "OLS" : "Ridge(lambda=" + format_double(spec.lambda) + ")";
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

int cmd_demo(const CommonOptions& opts, Streams io) {
  return guarded(io, [&] {
    const Run run = prepare(opts);
    const RunConfig& c = run.config;
    audit::AuditSink sink("demo", run.log_dir, opts.console_level, run.clock, &io.err);
    audit::ScopedErrorAudit guard(sink);
    sink.log(audit::Level::Info, "task_start", "demo run starting");

    // Data
    Data data = load_data(c, run.clock);
    sink.log(audit::Level::Info, "fetch", "series loaded",
             {{"source_url", data.provenance.source_url},
              {"content_hash", data.provenance.content_hash},
              {"rows", as_int(data.series.size())}});
    io.out << "Series: " << data.series.size() << " points from " << data.series.start().iso()
           << " to " << data.series.end().iso() << "\n";

    // Gaps
    TimeSeries raw = data.series;
    if (!c.input && raw.size() > 100) {
      std::vector<double> v(raw.values().begin(), raw.values().end());
      v[100] = std::numeric_limits<double>::quiet_NaN();
      raw = TimeSeries(raw.name(), raw.start(), raw.freq(), std::move(v));
    }
    const std::size_t before = validate_series(raw, MissingPolicy::Tolerant).missing.size();
    const TimeSeries y = interpolate_linear(raw, c.missing);
    const std::size_t after = validate_series(y, MissingPolicy::Tolerant).missing.size();
    validate_series(y, MissingPolicy::Strict);
    sink.log(audit::Level::Info, "interpolate", "linear interpolation applied",
             {{"missing_before", as_int(before)}, {"missing_after", as_int(after)}});
    io.out << "Missing values before: " << before << "\nMissing values after:  " << after << "\n";

    // Split
    if (y.size() <= c.horizon) raise(ErrorKind::TooShort, "series shorter than the horizon");
    const Timestamp train_end = c.train_end.value_or(y.timestamp(y.size() - c.horizon - 1));
    const TimeSeries train = slice_by_time(y, y.start(), train_end);
    if (train.size() >= y.size()) raise(ErrorKind::TooShort, "no evaluation data after train_end");
    const TimeSeries eval = slice_by_time(y, y.timestamp(train.size()), y.end());
    if (eval.size() < c.horizon) {
      raise(ErrorKind::TooShort, "evaluation range has fewer points than the horizon");
    }
    sink.log(audit::Level::Info, "split", "chronological split",
             {{"train_rows", as_int(train.size())}, {"eval_rows", as_int(eval.size())}});
    io.out << "Training range:   " << train.start().date() << " to " << train.end().date() << " ("
           << train.size() << " points)\nEvaluation range: " << eval.start().date() << " to "
           << eval.end().date() << " (" << eval.size() << " points)\n";

    // Calendar features
    const ExogMatrix exog = calendar(c, y.start(), y.end(), y.freq());
    sink.log(audit::Level::Info, "exog", "calendar features built",
             {{"rows", as_int(exog.rows())}, {"cols", as_int(exog.cols())}});
    io.out << "Feature matrix: " << exog.rows() << " rows, " << exog.cols() << " columns\n";

    // Fit
    const FittedForecaster model = fit_forecaster(train, c.lags, &exog, c.regressor, data.provenance);
    sink.log(audit::Level::Info, "fit", "forecaster fitted",
             {{"regressor", regressor_name(c.regressor)},
              {"lags", as_int(c.lags.size())},
              {"exog_cols", as_int(model.exog_columns.size())},
              {"training_start", model.training_range.first.iso()},
              {"training_end", model.training_range.second.iso()}});

    // Forecast
    const ExogMatrix future = exog.slice_rows(train.size(), c.horizon);
    const IntervalForecast fc = predict_interval(model, c.horizon, &future, c.coverage, c.n_boot);
    sink.log(audit::Level::Info, "predict", "interval forecast produced",
             {{"steps", as_int(c.horizon)}, {"coverage", c.coverage}, {"n_boot", as_int(c.n_boot)}});

    // Accuracy
    const auto actual = eval.values().first(c.horizon);
    const double mae = compute_metric({MetricKind::MAE}, actual, fc.point);
    const double mse = compute_metric({MetricKind::MSE}, actual, fc.point);
    const double rmse = compute_metric({MetricKind::RMSE}, actual, fc.point);
    const double mape = compute_metric({MetricKind::MAPE}, actual, fc.point);
    io.out << "MAE  = " << fixed3(mae) << "\nMSE  = " << fixed3(mse) << "\nRMSE = " << fixed3(rmse)
           << "\nMAPE = " << fixed3(100.0 * mape) << "%\n";
    audit::Context accuracy{{"mae", mae}, {"mse", mse}, {"rmse", rmse}, {"mape", mape}};
    if (train.size() >= 168 && c.horizon <= 168) {
      const auto vals = y.values();
      const auto persistence = vals.subspan(train.size() - 168, c.horizon);
      const double base = compute_metric({MetricKind::MAE}, actual, persistence);
      io.out << "Weekly persistence MAE = " << fixed3(base) << "\n";
      accuracy.emplace_back("weekly_persistence_mae", base);
    }
    sink.log(audit::Level::Info, "evaluate", "accuracy on the first forecast window", accuracy);

    // Backtest
    const std::vector<Metric> metrics = c.parsed_metrics();
    const BacktestResult bt = backtest(y, &exog, c.lags, c.regressor, c.plan, metrics, data.provenance);
    sink.log(audit::Level::Info, "backtest", "rolling-origin backtest finished",
             {{"folds", as_int(bt.per_fold.size())}, {"refit", c.plan.refit}});
    io.out << "Backtest folds: " << bt.per_fold.size() << "\n";

    // Artefacts
    write_file(run.output_dir / "model.json", serialize_model(model));
    write_file(run.output_dir / "forecast.csv", forecast_csv(fc, model.forecast_origin(), y.freq()));
    write_file(run.output_dir / "metrics.csv", metrics_csv(bt));
    sink.log(audit::Level::Info, "save", "artefacts written",
             {{"model", std::string("model.json")},
              {"forecast", std::string("forecast.csv")},
              {"metrics", std::string("metrics.csv")}});

    io.out << "Model fitted:        true\n"
           << "Training index:      " << model.training_range.first.date() << " to "
           << model.training_range.second.date() << "\n"
           << "Estimator class:     " << regressor_name(c.regressor) << "\n"
           << "Seed:                " << model.seed << "\n"
           << "Number of lags:      " << model.lags.size() << "\n"
           << "Number of exog cols: " << model.exog_columns.size() << "\n"
           << "Data source:         " << model.provenance.source_url << "\n"
           << "Data SHA-256:        " << model.provenance.content_hash << "\n"
           << "Audit log:           " << sink.path().string() << "\n";
    sink.log(audit::Level::Info, "task_end", "demo run completed");
    return kExitOk;
  });
}

int cmd_fit(const CommonOptions& opts, const std::filesystem::path& model_path, Streams io) {
  return guarded(io, [&] {
    const Run run = prepare(opts);
    const RunConfig& c = run.config;
    audit::AuditSink sink("fit", run.log_dir, opts.console_level, run.clock, &io.err);
    audit::ScopedErrorAudit guard(sink);
    sink.log(audit::Level::Info, "task_start", "fit starting");
    const Data data = load_data(c, run.clock);
    validate_series(data.series, MissingPolicy::Strict);
    const ExogMatrix exog = calendar(c, data.series.start(), data.series.end(), data.series.freq());
    const FittedForecaster model = fit_forecaster(data.series, c.lags, &exog, c.regressor, data.provenance);
    write_file(model_path, serialize_model(model));
    sink.log(audit::Level::Info, "fit", "forecaster fitted and saved",
             {{"rows", as_int(data.series.size())},
              {"regressor", regressor_name(c.regressor)},
              {"content_hash", data.provenance.content_hash}});
    io.out << "Model written to " << model_path.string() << "\n";
    return kExitOk;
  });
}

int cmd_predict(const CommonOptions& opts, const std::filesystem::path& model_path,
                const std::filesystem::path& output, Streams io) {
  return guarded(io, [&] {
    const Run run = prepare(opts);
    const RunConfig& c = run.config;
    audit::AuditSink sink("predict", run.log_dir, opts.console_level, run.clock, &io.err);
    audit::ScopedErrorAudit guard(sink);
    sink.log(audit::Level::Info, "task_start", "predict starting");
    const FittedForecaster model = load_model(model_path);
    const Timestamp origin = model.forecast_origin();
    std::optional<ExogMatrix> future;
    if (!model.exog_columns.empty()) {
      future = calendar(c, origin, advance(origin, model.freq, static_cast<std::int64_t>(c.horizon) - 1),
                        model.freq);
    }
    const IntervalForecast fc =
        predict_interval(model, c.horizon, future ? &*future : nullptr, c.coverage, c.n_boot);
    write_file(output, forecast_csv(fc, origin, model.freq));
    sink.log(audit::Level::Info, "predict", "forecast written",
             {{"steps", as_int(c.horizon)}, {"coverage", c.coverage}});
    io.out << "Forecast of " << c.horizon << " steps written to " << output.string() << "\n";
    return kExitOk;
  });
}

int cmd_backtest(const CommonOptions& opts, const std::filesystem::path& output, Streams io) {
  return guarded(io, [&] {
    const Run run = prepare(opts);
    const RunConfig& c = run.config;
    audit::AuditSink sink("backtest", run.log_dir, opts.console_level, run.clock, &io.err);
    audit::ScopedErrorAudit guard(sink);
    sink.log(audit::Level::Info, "task_start", "backtest starting");
    const Data data = load_data(c, run.clock);
    const ExogMatrix exog = calendar(c, data.series.start(), data.series.end(), data.series.freq());
    const BacktestResult bt =
        backtest(data.series, &exog, c.lags, c.regressor, c.plan, c.parsed_metrics(), data.provenance);
    write_file(output, metrics_csv(bt));
    sink.log(audit::Level::Info, "backtest", "backtest finished", {{"folds", as_int(bt.per_fold.size())}});
    io.out << bt.per_fold.size() << " folds written to " << output.string() << "\n";
    return kExitOk;
  });
}

int cmd_validate_log(const std::filesystem::path& path, Streams io) {
  return guarded(io, [&] {
    const audit::LogReport report = audit::validate_log(path);
    for (const audit::LogViolation& v : report.violations) {
      io.out << "line:" << v.line << " " << v.reason << "\n";
    }
    return report.ok() ? kExitOk : kExitContract;
  });
}

int cmd_cpe(const std::string& vendor, const std::string& product, const std::string& version,
            const std::string& target_sw, Streams io) {
  return guarded(io, [&] {
    io.out << cpe_for(vendor, product, version, CpeOptions{target_sw}).str() << "\n";
    return kExitOk;
  });
}

}  // namespace safecast::cli
