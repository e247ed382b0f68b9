#include <cmath>

#include "safecast/error.hpp"
#include "safecast/preprocess.hpp"

namespace safecast {

TimeSeries interpolate_linear(const TimeSeries& s, MissingMode mode) {
  std::vector<double> v(s.values().begin(), s.values().end());
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isinf(v[i])) {
      raise(ErrorKind::NonFiniteValue,
            "series '" + s.name() + "' has infinite value at index " + std::to_string(i));
    }
    if (!std::isnan(v[i])) finite.push_back(i);
  }
  if (finite.empty()) raise(ErrorKind::AllMissing, "series '" + s.name() + "' has no finite value");

  for (std::size_t k = 0; k + 1 < finite.size(); ++k) {
    const std::size_t a = finite[k];
    const std::size_t b = finite[k + 1];
    if (b == a + 1) continue;
    const double span = static_cast<double>(b - a);
    for (std::size_t i = a + 1; i < b; ++i) {
      const double w = static_cast<double>(i - a) / span;
      v[i] = v[a] + w * (v[b] - v[a]);
    }
  }

  const std::size_t first = finite.front();
  const std::size_t last = finite.back();
  if (first > 0 || last + 1 < v.size()) {
    switch (mode) {
      case MissingMode::Raise: {
        std::string positions;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i < first || i > last) positions += (positions.empty() ? "" : ", ") + std::to_string(i);
        }
        raise(ErrorKind::ResidualMissing, "series '" + s.name() +
                                              "' still has missing values at {" + positions +
                                              "} after interpolation");
      }
      case MissingMode::FfillBfill:
        for (std::size_t i = 0; i < first; ++i) v[i] = v[first];
        for (std::size_t i = last + 1; i < v.size(); ++i) v[i] = v[last];
        break;
      case MissingMode::Passthrough:
        break;
    }
  }
  return TimeSeries(s.name(), s.start(), s.freq(), std::move(v));
}

}  // namespace safecast
