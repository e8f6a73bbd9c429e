#include "qwn/time_grid.hpp"

#include <cmath>
#include <utility>

#include "qwn/errors.hpp"

namespace qwn {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) {
    throw InvalidArgument("TimeGrid needs at least 2 samples");
  }
  if (times_.front() != 0.0) {
    throw InvalidArgument("TimeGrid must start at t = 0");
  }
  for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
    if (!(times_[k + 1] > times_[k])) {
      throw InvalidArgument("TimeGrid times must be strictly increasing");
    }
  }
  const double mean_step = horizon() / static_cast<double>(intervals());
  uniform_ = true;
  for (std::size_t k = 0; k < intervals(); ++k) {
    if (std::abs(dt(k) - mean_step) > 1e-12 * mean_step) {
      uniform_ = false;
      break;
    }
  }
  step_ = uniform_ ? mean_step : 0.0;
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t steps) {
  if (!(horizon > 0.0)) {
    throw InvalidArgument("TimeGrid horizon must be positive");
  }
  if (steps < 1) {
    throw InvalidArgument("TimeGrid needs at least 1 interval");
  }
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    t[k] = horizon * static_cast<double>(k) / static_cast<double>(steps);
  }
  t.front() = 0.0;
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

double TimeGrid::step() const {
  if (!uniform_) {
    throw InvalidArgument("step() requested on a non-uniform TimeGrid");
  }
  return step_;
}

}  // namespace qwn
