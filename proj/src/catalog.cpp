#include "ndncache/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ndncache {

CatalogModel::CatalogModel(double q, double s, int file_count, int chunks_per_file)
    : q_(q), s_(s), files_(file_count), chunks_per_file_(chunks_per_file) {
  if (q < 0.0) throw std::invalid_argument("catalog: plateau factor q must be >= 0");
  if (s < 0.5 || s > 2.5) throw std::invalid_argument("catalog: shaping factor s must be in [0.5, 2.5]");
  if (file_count < 1) throw std::invalid_argument("catalog: file_count must be >= 1");
  if (chunks_per_file < 1) throw std::invalid_argument("catalog: chunks_per_file must be >= 1");

  // extended precision keeps the normalization error well under 1e-9 even
  // for 10^7-term sums
  long double acc = 0.0L;
  for (int j = files_; j >= 1; --j) {
    acc += std::pow(static_cast<long double>(j) + q_, -static_cast<long double>(s_));
  }
  denom_ = static_cast<double>(acc);
}

double CatalogModel::term(int rank) const {
  return std::pow(static_cast<double>(rank) + q_, -s_);
}

double CatalogModel::pmf(int rank) const {
  if (rank < 1 || rank > files_) {
    throw std::out_of_range("catalog: rank " + std::to_string(rank) + " outside [1, " +
                            std::to_string(files_) + "]");
  }
  return term(rank) / denom_;
}

double CatalogModel::cumulative(int k) const {
  if (k < 1 || k > files_) {
    throw std::out_of_range("catalog: cumulative rank out of range");
  }
  long double acc = 0.0L;
  for (int j = k; j >= 1; --j) {
    acc += std::pow(static_cast<long double>(j) + q_, -static_cast<long double>(s_));
  }
  return static_cast<double>(acc / static_cast<long double>(denom_));
}

int CatalogModel::sample(RngStream& rng) const {
  if (files_ == 1) {
    return 1;
  }
  if (cdf_.empty()) {
    cdf_.resize(files_);
    double acc = 0.0;
    for (int i = 1; i <= files_; ++i) {
      acc += term(i) / denom_;
      cdf_[i - 1] = acc;
    }
    cdf_.back() = 1.0;  // guard against accumulated rounding at the tail
  }
  const double u = rng.next_double();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(it - cdf_.begin()) + 1;
}

}  // namespace ndncache
