#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "safecast/error.hpp"
#include "safecast/series.hpp"

// Checks that `expr` raises safecast::Error of the given kind.
#define CHECK_RAISES(expr, error_kind)                                       \
  do {                                                                       \
    bool raised_ = false;                                                    \
    try {                                                                    \
      (void)(expr);                                                          \
    } catch (const safecast::Error& e_) {                                    \
      raised_ = true;                                                        \
      CHECK_MESSAGE(e_.kind() == (error_kind), e_.what());                   \
    }                                                                        \
    CHECK_MESSAGE(raised_, "expected " #error_kind " from " #expr);          \
  } while (0)

namespace testing {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "safecast-XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

inline safecast::TimeSeries hourly(std::vector<double> values,
                                   safecast::Timestamp start = safecast::Timestamp::from_civil(2025, 1, 1)) {
  return safecast::TimeSeries("y", start, safecast::Frequency::hours(1), std::move(values));
}

}  // namespace testing
