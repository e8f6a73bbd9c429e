#ifndef QWN_TIME_GRID_HPP
#define QWN_TIME_GRID_HPP

#include <cstddef>
#include <vector>

namespace qwn {

// Strictly increasing sample times starting at t = 0. Coefficients sampled
// on a grid are treated as piecewise constant: the value attached to
// times()[k] holds on [times()[k], times()[k+1]). The last sample only marks
// the horizon.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  // Uniform grid over [0, horizon] with `steps` intervals (steps+1 samples).
  static TimeGrid uniform(double horizon, std::size_t steps);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  std::size_t intervals() const { return times_.size() - 1; }
  double horizon() const { return times_.back(); }

  bool is_uniform() const { return uniform_; }
  // Step of a uniform grid; throws InvalidArgument for non-uniform grids.
  double step() const;
  // Width of interval k.
  double dt(std::size_t k) const { return times_[k + 1] - times_[k]; }

 private:
  std::vector<double> times_;
  bool uniform_ = false;
  double step_ = 0.0;
};

}  // namespace qwn

#endif  // QWN_TIME_GRID_HPP
