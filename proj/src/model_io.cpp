#include "safecast/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "safecast/csv.hpp"
#include "safecast/error.hpp"

namespace safecast {

namespace {

using nlohmann::json;

std::string canonical_number(double v) {
  std::string s = format_double(v);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) out.push_back(',');
        first = false;
        out += json(it.key()).dump();
        out.push_back(':');
        dump(it.value(), out);
      }
      out.push_back('}');
      return;
    }
    case json::value_t::array: {
      out.push_back('[');
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out.push_back(',');
        dump(j[i], out);
      }
      out.push_back(']');
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) raise(ErrorKind::NonFiniteValue, "model contains a non-finite number");
      out += canonical_number(v);
      return;
    }
    default:
      out += j.dump();
  }
}

std::string canonical(const json& j) {
  std::string out;
  dump(j, out);
  return out;
}

json floats(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

json document_without_hash(const FittedForecaster& f) {
  json payload;
  payload["lags"] = std::vector<int>(f.lags.lags().begin(), f.lags.lags().end());
  payload["exog_columns"] = f.exog_columns;
  payload["coefficients"] = floats(f.regressor.coefficients);
  payload["intercept"] = f.regressor.intercept;
  payload["residuals"] = floats(f.residuals);
  payload["training_range"] = {f.training_range.first.iso(), f.training_range.second.iso()};
  payload["freq_micros"] = f.freq.step_micros();
  payload["last_window"] = floats(f.last_window);
  payload["seed"] = f.seed;

  json doc;
  doc["format_version"] = std::string(kModelFormatVersion);
  doc["payload"] = std::move(payload);
  doc["provenance"] = {{"source_url", f.provenance.source_url},
                       {"retrieved_at", f.provenance.retrieved_at.iso()},
                       {"content_hash", f.provenance.content_hash}};
  return doc;
}

[[noreturn]] void malformed(const std::string& what) {
  raise(ErrorKind::ParseError, "model file: " + what);
}

const json& member(const json& obj, const char* key, json::value_t type) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing '") + key + "'");
  const json& v = obj.at(key);
  const bool numeric = type == json::value_t::number_float;
  const bool integral = type == json::value_t::number_unsigned;
  if ((numeric && !v.is_number()) || (integral && !v.is_number_unsigned() && !v.is_number_integer()) ||
      (!numeric && !integral && v.type() != type)) {
    malformed(std::string("'") + key + "' has the wrong type");
  }
  return v;
}

std::vector<double> float_array(const json& obj, const char* key) {
  std::vector<double> out;
  for (const json& v : member(obj, key, json::value_t::array)) {
    if (!v.is_number()) malformed(std::string("'") + key + "' holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

void expect_keys(const json& obj, std::initializer_list<const char*> keys, const char* where) {
  if (obj.size() != keys.size()) malformed(std::string("unexpected keys in ") + where);
  for (const char* k : keys) {
    if (!obj.contains(k)) malformed(std::string("missing '") + k + "' in " + where);
  }
}

}  // namespace

std::string serialize_model(const FittedForecaster& f) {
  json doc = document_without_hash(f);
  doc["self_hash"] = sha256_hex(canonical(doc));
  return canonical(doc) + "\n";
}

FittedForecaster deserialize_model(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level is not an object");
  const json& version = member(doc, "format_version", json::value_t::string);
  if (version.get<std::string>() != kModelFormatVersion) {
    raise(ErrorKind::UnsupportedVersion, "model format_version '" + version.get<std::string>() +
                                             "', this build reads '" +
                                             std::string(kModelFormatVersion) + "'");
  }
  expect_keys(doc, {"format_version", "payload", "provenance", "self_hash"}, "document");
  const std::string stored_hash = member(doc, "self_hash", json::value_t::string).get<std::string>();
  json unhashed = doc;
  unhashed.erase("self_hash");
  if (sha256_hex(canonical(unhashed)) != stored_hash) {
    raise(ErrorKind::HashMismatch, "model content does not match its self_hash");
  }
  if (canonical(doc) + "\n" != bytes) malformed("document is not in canonical form");

  const json& p = member(doc, "payload", json::value_t::object);
  expect_keys(p, {"coefficients", "exog_columns", "freq_micros", "intercept", "lags", "last_window",
                  "residuals", "seed", "training_range"},
              "payload");
  const json& prov = member(doc, "provenance", json::value_t::object);
  expect_keys(prov, {"content_hash", "retrieved_at", "source_url"}, "provenance");

  try {
    std::vector<int> lags;
    for (const json& l : member(p, "lags", json::value_t::array)) lags.push_back(l.get<int>());
    std::vector<std::string> exog_columns;
    for (const json& c : member(p, "exog_columns", json::value_t::array)) {
      exog_columns.push_back(c.get<std::string>());
    }
    const json& range = member(p, "training_range", json::value_t::array);
    if (range.size() != 2) malformed("training_range must have two entries");

    FittedRegressor reg;
    reg.coefficients = float_array(p, "coefficients");
    reg.intercept = member(p, "intercept", json::value_t::number_float).get<double>();
    reg.feature_count = reg.coefficients.size();

    FittedForecaster f{
        LagSet(std::move(lags)),
        std::move(reg),
        std::move(exog_columns),
        float_array(p, "residuals"),
        {Timestamp::parse(range[0].get<std::string>()), Timestamp::parse(range[1].get<std::string>())},
        Frequency(member(p, "freq_micros", json::value_t::number_unsigned).get<std::int64_t>()),
        float_array(p, "last_window"),
        member(p, "seed", json::value_t::number_unsigned).get<std::uint64_t>(),
        ProvenanceRecord{member(prov, "source_url", json::value_t::string).get<std::string>(),
                         Timestamp::parse(member(prov, "retrieved_at", json::value_t::string).get<std::string>()),
                         member(prov, "content_hash", json::value_t::string).get<std::string>()},
    };
    if (f.regressor.feature_count != f.lags.size() + f.exog_columns.size()) {
      malformed("coefficient count does not match lags and exog columns");
    }
    if (f.last_window.size() != static_cast<std::size_t>(f.lags.max_lag())) {
      malformed("last_window length does not match the largest lag");
    }
    if (!is_sha256_hex(f.provenance.content_hash)) malformed("provenance content_hash is not SHA-256 hex");
    return f;
  } catch (const json::exception& e) {
    malformed(e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    malformed(e.what());
  }
}

void save_model(const FittedForecaster& f, const std::filesystem::path& path) {
  const std::string bytes = serialize_model(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::IoError, "cannot write model file " + path.string());
  out << bytes;
  out.flush();
  if (!out) raise(ErrorKind::IoError, "write to model file " + path.string() + " failed");
}

FittedForecaster load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::IoError, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) raise(ErrorKind::IoError, "read failed for " + path.string());
  return deserialize_model(buf.str());
}

}  // namespace safecast
