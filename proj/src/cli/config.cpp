#include "config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "safecast/error.hpp"

namespace safecast::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { raise(ErrorKind::ConfigError, what); }

void only_keys(const json& obj, std::initializer_list<std::string_view> keys, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view k : keys) known = known || key == k;
    if (!known) bad("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_size(const json& j, const std::string& key) {
  if (!j.at(key).is_number_unsigned()) bad("config key '" + key + "' must be a non-negative integer");
  return j.at(key).get<std::size_t>();
}

Timestamp get_time(const json& j, const std::string& key) {
  const auto t = Timestamp::try_parse(get<std::string>(j, key));
  if (!t) bad("config key '" + key + "' is not an ISO 8601 UTC timestamp");
  return *t;
}

CalendarField parse_field(const std::string& s) {
  if (s == "hour") return CalendarField::Hour;
  if (s == "dayofweek") return CalendarField::DayOfWeek;
  if (s == "dayofyear") return CalendarField::DayOfYear;
  bad("unknown calendar column '" + s + "'");
}

MissingMode parse_missing(const std::string& s) {
  if (s == "raise") return MissingMode::Raise;
  if (s == "ffill_bfill") return MissingMode::FfillBfill;
  if (s == "passthrough") return MissingMode::Passthrough;
  bad("unknown missing mode '" + s + "'");
}

}  // namespace

std::vector<Metric> RunConfig::parsed_metrics() const {
  std::vector<Metric> out;
  for (const std::string& m : metrics) out.push_back(parse_metric(m, mase_seasonality));
  return out;
}

RunConfig default_config() {
  RunConfig c;
  c.periods = {Period("hour", 6, CalendarField::Hour, 0, 23),
               Period("dayofweek", 4, CalendarField::DayOfWeek, 0, 6)};
  c.holidays = {parse_date("2025-01-01")};
  c.train_end = Timestamp::from_civil(2025, 3, 1, 23);
  c.plan.initial_train_size = 1440;
  c.plan.steps = 24;
  c.plan.horizon = 24;
  c.plan.refit = false;
  c.regressor = RegressorSpec::ols(c.seed);
  return c;
}

RunConfig parse_config(std::string_view json_text) {
  json j = json::parse(json_text.begin(), json_text.end(), nullptr, false);
  if (j.is_discarded()) bad("config is not valid JSON");
  only_keys(j,
            {"input", "synthetic", "lags", "periods", "holidays", "weekend_days", "regressor",
             "horizon", "coverage", "n_boot", "missing", "train_end", "plan", "metrics",
             "mase_seasonality", "seed", "log_dir", "output_dir"},
            "config");
  RunConfig c = default_config();

  if (j.contains("input")) {
    if (j["input"].is_null()) {
      c.input.reset();
    } else {
      c.input = get<std::string>(j, "input");
    }
  }
  if (j.contains("synthetic")) {
    const json& s = j["synthetic"];
    only_keys(s, {"n", "start", "seed", "noise_sd"}, "synthetic");
    if (s.contains("n")) c.synthetic.n = get_size(s, "n");
    if (s.contains("start")) c.synthetic.start = get_time(s, "start");
    if (s.contains("seed")) c.synthetic.seed = get<std::uint64_t>(s, "seed");
    if (s.contains("noise_sd")) c.synthetic.noise_sd = get<double>(s, "noise_sd");
  }
  if (j.contains("lags")) {
    const json& l = j["lags"];
    if (l.is_number_unsigned()) {
      c.lags = LagSet::range(1, get<int>(j, "lags"));
    } else {
      c.lags = LagSet(get<std::vector<int>>(j, "lags"));
    }
  }
  if (j.contains("periods")) {
    c.periods.clear();
    if (!j["periods"].is_array()) bad("'periods' must be an array");
    for (const json& p : j["periods"]) {
      only_keys(p, {"name", "n_periods", "column", "input_range"}, "period");
      const auto range = get<std::vector<int>>(p, "input_range");
      if (range.size() != 2) bad("period input_range must have two entries");
      c.periods.emplace_back(get<std::string>(p, "name"), get<int>(p, "n_periods"),
                             parse_field(get<std::string>(p, "column")), range[0], range[1]);
    }
  }
  if (j.contains("holidays")) {
    c.holidays.clear();
    for (const std::string& d : get<std::vector<std::string>>(j, "holidays")) {
      c.holidays.insert(parse_date(d));
    }
  }
  if (j.contains("weekend_days")) {
    const auto days = get<std::vector<int>>(j, "weekend_days");
    c.weekend_days = std::set<int>(days.begin(), days.end());
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  c.regressor.seed = c.seed;
  if (j.contains("regressor")) {
    const json& r = j["regressor"];
    only_keys(r, {"kind", "lambda"}, "regressor");
    const std::string kind = get<std::string>(r, "kind");
    if (kind == "ols") {
      if (r.contains("lambda")) bad("'lambda' applies to ridge only");
      c.regressor = RegressorSpec::ols(c.seed);
    } else if (kind == "ridge") {
      c.regressor = RegressorSpec::ridge(r.contains("lambda") ? get<double>(r, "lambda") : 1.0, c.seed);
    } else {
      bad("unknown regressor kind '" + kind + "'");
    }
  }
  if (j.contains("horizon")) c.horizon = get_size(j, "horizon");
  if (j.contains("coverage")) c.coverage = get<double>(j, "coverage");
  if (j.contains("n_boot")) c.n_boot = get_size(j, "n_boot");
  if (j.contains("missing")) c.missing = parse_missing(get<std::string>(j, "missing"));
  if (j.contains("train_end")) {
    if (j["train_end"].is_null()) {
      c.train_end.reset();
    } else {
      c.train_end = get_time(j, "train_end");
    }
  }
  c.plan.horizon = c.horizon;
  if (j.contains("plan")) {
    const json& p = j["plan"];
    only_keys(p, {"initial_train_size", "steps", "refit", "fold_stride", "allow_incomplete_final"}, "plan");
    if (p.contains("initial_train_size")) c.plan.initial_train_size = get_size(p, "initial_train_size");
    if (p.contains("steps")) c.plan.steps = get_size(p, "steps");
    if (p.contains("refit")) c.plan.refit = get<bool>(p, "refit");
    if (p.contains("fold_stride")) c.plan.fold_stride = get_size(p, "fold_stride");
    if (p.contains("allow_incomplete_final")) {
      c.plan.allow_incomplete_final = get<bool>(p, "allow_incomplete_final");
    }
  }
  if (j.contains("metrics")) c.metrics = get<std::vector<std::string>>(j, "metrics");
  if (j.contains("mase_seasonality")) c.mase_seasonality = get_size(j, "mase_seasonality");
  if (j.contains("log_dir")) c.log_dir = get<std::string>(j, "log_dir");
  if (j.contains("output_dir")) c.output_dir = get<std::string>(j, "output_dir");

  if (c.horizon == 0) bad("horizon must be >= 1");
  if (!(c.coverage > 0.0 && c.coverage < 1.0)) bad("coverage must lie in (0, 1)");
  if (c.n_boot == 0) bad("n_boot must be >= 1");
  if (c.metrics.empty()) bad("at least one metric is required");
  c.parsed_metrics();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::IoError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace safecast::cli
