#pragma once

#include <cmath>
#include <cstdint>

namespace quadsgd {

// Kahan-compensated accumulator for long sums of small terms.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// floor/ceil with a snap-to-integer guard: values within a small relative
// distance of an integer are treated as that integer, so expressions like
// pow(32, 1/5.0) == 1.9999999999999998 do not floor to the wrong bucket.
inline double snap_to_integer(double x) {
  const double r = std::nearbyint(x);
  if (std::fabs(x - r) <= 1e-9 * std::fmax(1.0, std::fabs(x))) return r;
  return x;
}

inline std::int64_t floor_snapped(double x) {
  return static_cast<std::int64_t>(std::floor(snap_to_integer(x)));
}

inline std::int64_t ceil_snapped(double x) {
  return static_cast<std::int64_t>(std::ceil(snap_to_integer(x)));
}

}  // namespace quadsgd
