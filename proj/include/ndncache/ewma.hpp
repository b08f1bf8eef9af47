#pragma once

#include <cmath>
#include <stdexcept>

namespace ndncache {

/// Exponentially weighted moving average with a deviation track and a
/// deviation-based margin:
///
///   avg <- avg + g * (sample - avg)
///   dev <- dev + g' * (|sample - avg| - dev)      (uses the updated avg)
///   estimate = avg + margin * dev
///
/// The first sample seeds avg; dev starts at 0. Gains default to g = 1/2^4
/// and g' = 1/2^2, margin coefficient 0.1.
class EwmaEstimator {
 public:
  EwmaEstimator() = default;

  EwmaEstimator(double gain, double dev_gain, double margin_coeff)
      : g_(gain), g_prime_(dev_gain), margin_(margin_coeff) {
    if (gain <= 0.0 || gain >= 1.0 || dev_gain <= 0.0 || dev_gain >= 1.0) {
      throw std::invalid_argument("ewma: gains must lie in (0, 1)");
    }
  }

  void update(double sample) {
    if (sample < 0.0) {
      throw std::invalid_argument("ewma: negative sample (counter underflow?)");
    }
    if (!initialized_) {
      avg_ = sample;
      dev_ = 0.0;
      initialized_ = true;
      return;
    }
    avg_ += g_ * (sample - avg_);
    dev_ += g_prime_ * (std::abs(sample - avg_) - dev_);
  }

  /// avg + margin * dev; never below avg.
  double estimate() const {
    if (!initialized_) {
      throw std::logic_error("ewma: estimate() before any sample");
    }
    return avg_ + margin_ * dev_;
  }

  bool initialized() const { return initialized_; }
  double average() const { return avg_; }
  double deviation() const { return dev_; }
  double gain() const { return g_; }
  double dev_gain() const { return g_prime_; }

 private:
  double avg_ = 0.0;
  double dev_ = 0.0;
  double g_ = 0.125;
  double g_prime_ = 0.25;
  double margin_ = 0.1;
  bool initialized_ = false;
};

}  // namespace ndncache
