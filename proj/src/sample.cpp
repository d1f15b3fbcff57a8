#include "qineq/sample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qineq/error.hpp"

namespace qineq {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("sample must contain at least one observation");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "sample entry " << i << " is not finite";
      throw InvalidArgument(msg.str());
    }
    if (v < 0.0) {
      std::ostringstream msg;
      msg << "sample entry " << i << " is negative (" << v << ")";
      throw InvalidArgument(msg.str());
    }
  }
  std::sort(values_.begin(), values_.end());
  zero_count_ = static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), 0.0) - values_.begin());
}

Sample::Sample(std::vector<double> sorted, Sorted) : values_(std::move(sorted)) {
  zero_count_ = static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), 0.0) - values_.begin());
}

Sample Sample::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scale factor must be positive");
  std::vector<double> out(values_.begin(), values_.end());
  for (double& v : out) v *= c;
  for (double v : out)
    if (!std::isfinite(v)) throw InvalidArgument("scaled sample overflows");
  return Sample(std::move(out), Sorted{});
}

}  // namespace qineq
