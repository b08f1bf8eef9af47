#pragma once

#include <vector>

#include "ndncache/rng.hpp"

namespace ndncache {

/// Mandelbrot-Zipf file popularity over one application's catalog:
/// p(i) proportional to 1/(i+q)^s for ranks 1..file_count. q >= 0 flattens
/// the head ("plateau factor"); s in [0.5, 2.5] is the shaping factor; q = 0
/// reduces to plain Zipf.
class CatalogModel {
 public:
  CatalogModel(double q, double s, int file_count, int chunks_per_file);

  double q() const { return q_; }
  double s() const { return s_; }
  int file_count() const { return files_; }
  int chunks_per_file() const { return chunks_per_file_; }

  /// Probability of rank i; throws std::out_of_range unless 1 <= i <= file_count.
  double pmf(int rank) const;

  /// Cumulative probability of ranks 1..k by direct summation.
  double cumulative(int k) const;

  /// Draws a rank by inverse-CDF binary search over the cumulative table
  /// (built lazily on first use).
  int sample(RngStream& rng) const;

 private:
  double term(int rank) const;

  double q_;
  double s_;
  int files_;
  int chunks_per_file_;
  double denom_;
  mutable std::vector<double> cdf_;
};

}  // namespace ndncache
