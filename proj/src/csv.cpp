#include "safecast/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "safecast/error.hpp"

namespace safecast {

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(begin));
      return cells;
    }
    cells.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    raise(ErrorKind::ParseError,
          "line " + std::to_string(line_no) + ": '" + std::string(cell) + "' is not a number");
  }
  return v;
}

}  // namespace

TimeSeries CsvTable::series(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return TimeSeries(name, start, freq, columns[i]);
  }
  raise(ErrorKind::InvalidArgument, "CSV has no column '" + name + "'");
}

CsvTable parse_csv(std::string text, std::optional<Frequency> freq) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Timestamp> stamps;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (table.names.empty()) {
      if (trim(cells[0]) != "timestamp") {
        raise(ErrorKind::ParseError, "first CSV column must be named 'timestamp'");
      }
      if (cells.size() < 2) raise(ErrorKind::ParseError, "CSV has no value columns");
      for (std::size_t i = 1; i < cells.size(); ++i) table.names.emplace_back(trim(cells[i]));
      table.columns.resize(table.names.size());
      continue;
    }
    if (cells.size() != table.names.size() + 1) {
      raise(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(table.names.size() + 1) + " cells");
    }
    stamps.push_back(Timestamp::parse(trim(cells[0])));
    for (std::size_t i = 1; i < cells.size(); ++i) {
      table.columns[i - 1].push_back(parse_cell(cells[i], line_no));
    }
  }
  if (table.names.empty()) raise(ErrorKind::ParseError, "CSV has no header");
  if (stamps.empty()) raise(ErrorKind::ParseError, "CSV has no data rows");

  if (freq) {
    table.freq = *freq;
  } else if (stamps.size() >= 2 && stamps[1] > stamps[0]) {
    table.freq = Frequency(stamps[1].micros() - stamps[0].micros());
  } else if (stamps.size() >= 2) {
    raise(ErrorKind::ParseError, "timestamps 1 and 2 are duplicated or out of order");
  } else {
    raise(ErrorKind::ParseError, "cannot infer the frequency of a single-row CSV");
  }
  table.start = stamps.front();
  for (std::size_t i = 1; i < stamps.size(); ++i) {
    if (stamps[i] != advance(table.start, table.freq, static_cast<std::int64_t>(i))) {
      raise(ErrorKind::ParseError, "data row " + std::to_string(i + 1) + " timestamp " +
                                       stamps[i].iso() + " is off-grid or duplicated");
    }
  }
  table.raw = std::move(text);
  return table;
}

CsvTable load_csv(const std::filesystem::path& path, std::optional<Frequency> freq) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) raise(ErrorKind::IoError, "read failed for " + path.string());
  return parse_csv(buf.str(), freq);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace safecast
