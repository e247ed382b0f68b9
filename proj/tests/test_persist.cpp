#include <filesystem>
#include <random>

#include "safecast/cache.hpp"
#include "safecast/cpe.hpp"
#include "safecast/model_io.hpp"
#include "safecast/preprocess.hpp"
#include "safecast/provenance.hpp"
#include "support.hpp"

using namespace safecast;

namespace {

FittedForecaster sample_model() {
  const TimeSeries y = synth_load(600, 77);
  const std::vector<Period> periods{Period("hour", 6, CalendarField::Hour, 0, 23)};
  const Frequency h = Frequency::hours(1);
  const ExogMatrix x = build_exog({y.start(), advance(y.start(), h, 599), h}, periods, {});
  return fit_forecaster(y, LagSet({1, 2, 3, 24}), &x, RegressorSpec::ridge(0.25, 99),
                        make_provenance("file:load.csv", "raw bytes", Timestamp::from_civil(2026, 1, 2, 3)));
}

std::string random_component(std::mt19937_64& gen) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-!\"#$%&'()*+,/:;<=>?@[\\]^`{|}~";
  std::string s(1 + gen() % 12, 'a');
  for (char& c : s) c = alphabet[gen() % alphabet.size()];
  return s == "*" ? "star" : s;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(is_sha256_hex(sha256_hex("x")));
  CHECK_FALSE(is_sha256_hex("ABC"));
  const ProvenanceRecord p = make_provenance("u", "abc", Timestamp(5));
  CHECK(p.content_hash == sha256_hex("abc"));
  CHECK(p.retrieved_at == Timestamp(5));
}

TEST_CASE("model serialization round trip") {
  const FittedForecaster f = sample_model();
  const std::string bytes = serialize_model(f);
  CHECK(bytes == serialize_model(f));
  CHECK(bytes.back() == '\n');
  const FittedForecaster g = deserialize_model(bytes);
  CHECK(g == f);
  CHECK(serialize_model(g) == bytes);

  testing::TempDir dir;
  save_model(f, dir / "m.json");
  save_model(f, dir / "n.json");
  CHECK(testing::read_file(dir / "m.json") == testing::read_file(dir / "n.json"));
  const FittedForecaster h = load_model(dir / "m.json");
  const Frequency hr = Frequency::hours(1);
  const std::vector<Period> periods{Period("hour", 6, CalendarField::Hour, 0, 23)};
  const ExogMatrix future = build_exog({f.forecast_origin(), advance(f.forecast_origin(), hr, 23), hr}, periods, {});
  CHECK(predict_interval(h, 24, &future, 0.9, 100) == predict_interval(f, 24, &future, 0.9, 100));
  CHECK_RAISES(load_model(dir / "absent.json"), ErrorKind::IoError);
}

TEST_CASE("model integrity checks") {
  const std::string bytes = serialize_model(sample_model());

  std::string digit = bytes;
  const std::size_t at = digit.find("\"intercept\":") + 13;
  digit[at] = digit[at] == '1' ? '2' : '1';
  CHECK_RAISES(deserialize_model(digit), ErrorKind::HashMismatch);

  std::string v2 = bytes;
  v2.replace(v2.find("\"format_version\":\"1\""), 20, "\"format_version\":\"2\"");
  CHECK_RAISES(deserialize_model(v2), ErrorKind::UnsupportedVersion);

  CHECK_RAISES(deserialize_model(bytes.substr(0, bytes.size() / 2)), ErrorKind::ParseError);
  CHECK_RAISES(deserialize_model(""), ErrorKind::ParseError);
}

TEST_CASE("any single-byte change is rejected") {
  const std::string bytes = serialize_model(sample_model());
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 400; ++trial) {
    std::string t = bytes;
    const std::size_t pos = gen() % (t.size() - 1);  // the final newline is not content
    char c;
    do {
      c = static_cast<char>(0x20 + gen() % 95);
    } while (c == t[pos]);
    t[pos] = c;
    bool rejected = false;
    try {
      deserialize_model(t);
    } catch (const Error&) {
      rejected = true;
    }
    CHECK_MESSAGE(rejected, "byte " << pos << " changed to '" << c << "' was accepted");
  }
}

TEST_CASE("cache read and quarantine") {
  testing::TempDir dir;
  const Timestamp when(1'714'000'000LL * 1'000'000);
  std::ostringstream console;
  audit::AuditSink sink("cache", dir / "logs", audit::Level::Critical, audit::fixed_clock(when), &console);

  CHECK_FALSE(read_cache(dir / "none.bin", audit::fixed_clock(when), &sink).has_value());
  CHECK(testing::read_file(sink.path()).empty());

  write_cache(dir / "ok.bin", "payload\nwith lines");
  CHECK(read_cache(dir / "ok.bin", audit::fixed_clock(when), &sink) == "payload\nwith lines");

  write_cache(dir / "c.bin", "precious");
  std::string damaged = testing::read_file(dir / "c.bin");
  damaged.back() = 'X';
  testing::write_file(dir / "c.bin", damaged);
  CHECK_FALSE(read_cache(dir / "c.bin", audit::fixed_clock(when), &sink).has_value());
  CHECK_FALSE(std::filesystem::exists(dir / "c.bin"));
  CHECK(std::filesystem::exists(dir / "c.bin.corrupt-1714000000"));
  const std::string log = testing::read_file(sink.path());
  CHECK(log.find("\"level\":\"WARNING\"") != std::string::npos);
  CHECK(log.find("cache_quarantine") != std::string::npos);

  testing::write_file(dir / "junk.bin", "no header at all");
  CHECK_FALSE(read_cache(dir / "junk.bin", audit::fixed_clock(when)).has_value());
  CHECK(std::filesystem::exists(dir / "junk.bin.corrupt-1714000000"));
}

TEST_CASE("cpe identifiers from the documentation") {
  CHECK(cpe_for("bartzbeielstein", "spotforecast2-safe", "1.0.0", CpeOptions{"python"}).str() ==
        "cpe:2.3:a:bartzbeielstein:spotforecast2-safe:1.0.0:*:*:*:*:python:*:*");
  CHECK(cpe_for("sequential_parameter_optimization", "spotforecast2_safe", "*").str() ==
        "cpe:2.3:a:sequential_parameter_optimization:spotforecast2_safe:*:*:*:*:*:*:*:*");
  CHECK(cpe_for("sequential_parameter_optimization", "spotforecast2_safe", "1.0.1").str() ==
        "cpe:2.3:a:sequential_parameter_optimization:spotforecast2_safe:1.0.1:*:*:*:*:*:*:*");
}

TEST_CASE("cpe escaping and validation") {
  const CpeIdentifier id = cpe_for("acme:corp", "Tool", "2.0*");
  CHECK(id.bound(CpeIdentifier::Vendor) == "acme\\:corp");
  CHECK(id.value(CpeIdentifier::Vendor) == "acme:corp");
  CHECK(id.bound(CpeIdentifier::Product) == "\\Tool");
  CHECK(id.bound(CpeIdentifier::Version) == "2.0\\*");
  CHECK(parse_cpe(id.str()) == id);
  CHECK_RAISES(cpe_for("", "p", "1"), ErrorKind::InvalidComponent);
  CHECK_RAISES(cpe_for("a b", "p", "1"), ErrorKind::InvalidComponent);
  CHECK_RAISES(parse_cpe("cpe:2.3:a:v:p:1"), ErrorKind::InvalidComponent);
  CHECK_RAISES(parse_cpe("cpe:2.3:o:v:p:1:*:*:*:*:*:*:*"), ErrorKind::InvalidComponent);
  CHECK_RAISES(parse_cpe("cpe:2.3:a:v:p:1::*:*:*:*:*:*"), ErrorKind::InvalidComponent);
  CHECK_RAISES(parse_cpe("cpe:2.3:a:v!:p:1:*:*:*:*:*:*:*"), ErrorKind::InvalidComponent);
}

TEST_CASE("cpe round trips on random components") {
  std::mt19937_64 gen(55);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string v = random_component(gen);
    const std::string p = random_component(gen);
    const std::string ver = random_component(gen);
    const CpeIdentifier id = cpe_for(v, p, ver, CpeOptions{random_component(gen)});
    const std::string s = id.str();
    const CpeIdentifier back = parse_cpe(s);
    CHECK(back == id);
    CHECK(back.str() == s);
    CHECK(back.value(CpeIdentifier::Vendor) == v);
    CHECK(back.value(CpeIdentifier::Version) == ver);
  }
}
