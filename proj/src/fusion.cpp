#include "ndncache/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ndncache {

namespace {
constexpr double kFusedFloor = 0.01;  // keeps every router a positive weight
constexpr int kPowerIterationCap = 10000;
constexpr double kResidualTolerance = 1e-10;
}  // namespace

FeatureMatrix make_feature_matrix(const std::vector<RouterFeatureRecord>& records,
                                  NormalizationMode mode) {
  FeatureMatrix fm;
  fm.mode = mode;
  fm.routers.reserve(records.size());
  fm.values.resize(static_cast<Eigen::Index>(records.size()), 3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    fm.routers.push_back(records[i].router);
    fm.values(static_cast<Eigen::Index>(i), 0) = records[i].bc;
    fm.values(static_cast<Eigen::Index>(i), 1) = records[i].estimated_pi;
    fm.values(static_cast<Eigen::Index>(i), 2) = records[i].estimated_hi;
  }
  return fm;
}

FeatureMatrix normalize(const FeatureMatrix& features) {
  const Eigen::Index rows = features.values.rows();
  if (rows < 2) {
    throw std::invalid_argument("fusion: normalization needs at least 2 routers");
  }
  FeatureMatrix out = features;
  for (Eigen::Index c = 0; c < 3; ++c) {
    auto col = out.values.col(c);
    if (features.mode == NormalizationMode::MinMax) {
      const double lo = col.minCoeff();
      const double hi = col.maxCoeff();
      if (hi == lo) {
        col.setZero();
      } else {
        col = (col.array() - lo) / (hi - lo);
      }
    } else {
      const double mean = col.mean();
      const double var = (col.array() - mean).square().sum() / static_cast<double>(rows);
      const double sd = std::sqrt(var);
      if (sd == 0.0) {
        col.setZero();
      } else {
        col = (col.array() - mean) / sd;
      }
    }
  }
  return out;
}

Eigen::Matrix3d covariance(const FeatureMatrix& normalized) {
  const Eigen::Index rows = normalized.values.rows();
  if (rows < 2) {
    throw std::invalid_argument("fusion: covariance needs at least 2 routers");
  }
  Eigen::Matrix<double, Eigen::Dynamic, 3> centered =
      normalized.values.rowwise() - normalized.values.colwise().mean();
  return (centered.adjoint() * centered) / static_cast<double>(rows);
}

PrincipalComponents first_eigenvector(const Eigen::Matrix3d& cov) {
  if (!cov.isApprox(cov.transpose(), 1e-12)) {
    throw std::invalid_argument("fusion: covariance matrix is not symmetric");
  }

  PrincipalComponents out;
  Eigen::Vector3d v = Eigen::Vector3d::Ones() / std::sqrt(3.0);

  for (int iter = 0; iter < kPowerIterationCap; ++iter) {
    Eigen::Vector3d w = cov * v;
    const double norm = w.norm();
    if (norm < 1e-250) {
      out.degenerate = true;  // (numerically) zero matrix: no variance at all
      return out;
    }
    w /= norm;
    if (w.dot(v) < 0.0) w = -w;
    if ((w.array() == v.array()).all()) break;  // exact fixed point
    v = w;
  }

  const double lambda = v.dot(cov * v);
  const double residual = (cov * v - lambda * v).cwiseAbs().maxCoeff();
  if (residual > kResidualTolerance * std::max(1.0, std::abs(lambda))) {
    throw std::runtime_error("fusion: power iteration did not converge (tied eigenvalues?)");
  }

  double sum = v.sum();
  if (sum < 0.0) {
    v = -v;
    sum = -sum;
  }
  if (sum == 0.0) {
    out.degenerate = true;
    return out;
  }

  Eigen::Vector3d pc = v / sum;
  if ((pc.array() < 0.0).any()) {
    pc = pc.cwiseMax(0.0);
    const double pc_sum = pc.sum();
    if (pc_sum == 0.0) {
      out.degenerate = true;
      return out;
    }
    pc /= pc_sum;
  }

  out.pc = pc;
  out.eigenvector = v;
  out.eigenvalue = lambda;
  out.residual = residual;
  return out;
}

Eigen::VectorXd fuse(const FeatureMatrix& normalized, const PrincipalComponents& pc) {
  if (pc.degenerate) {
    throw std::invalid_argument("fusion: cannot fuse with degenerate principal components");
  }
  return normalized.values * pc.pc;
}

WeightVector weights(const std::vector<NodeId>& routers, const Eigen::VectorXd& fused) {
  if (static_cast<std::size_t>(fused.size()) != routers.size()) {
    throw std::invalid_argument("fusion: fused vector length does not match router count");
  }
  Eigen::VectorXd floored = fused.cwiseMax(kFusedFloor);
  WeightVector out;
  out.routers = routers;
  out.w = floored / floored.sum();
  return out;
}

WeightVector uniform_weights(const std::vector<NodeId>& routers) {
  WeightVector out;
  out.routers = routers;
  out.w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(routers.size()),
                                    1.0 / static_cast<double>(routers.size()));
  return out;
}

WeightVector degree_weights(const std::vector<NodeId>& routers, const CentralityVector& degrees) {
  Eigen::VectorXd deg(static_cast<Eigen::Index>(routers.size()));
  for (std::size_t i = 0; i < routers.size(); ++i) {
    deg(static_cast<Eigen::Index>(i)) = degrees.at(routers[i]);
  }
  WeightVector out;
  out.routers = routers;
  out.w = deg / deg.sum();
  return out;
}

AllocationPlan allocate(const WeightVector& w, int total_chunks) {
  const int n = static_cast<int>(w.routers.size());
  if (total_chunks < n) {
    throw std::invalid_argument("fusion: total cache budget smaller than router count");
  }

  // Reserve the 1-chunk floor up front, then split the remainder by largest
  // remainder on the real quotas.
  const int spare = total_chunks - n;
  std::vector<int> caps(n, 1);
  std::vector<std::pair<double, int>> remainders;  // (fraction, router index)
  remainders.reserve(n);
  int assigned = 0;
  for (int i = 0; i < n; ++i) {
    const double quota = static_cast<double>(spare) * w.w(i);
    const int base = static_cast<int>(std::floor(quota));
    caps[i] += base;
    assigned += base;
    remainders.emplace_back(quota - base, i);
  }
  int leftover = spare - assigned;
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // deterministic tie-break by router index
  });
  for (int k = 0; k < leftover; ++k) {
    ++caps[remainders[static_cast<std::size_t>(k)].second];
  }

  AllocationPlan plan;
  plan.routers = w.routers;
  plan.capacity_chunks = std::move(caps);
  plan.total = total_chunks;
  return plan;
}

WeightVector fused_weights(const FeatureMatrix& raw) {
  const FeatureMatrix normalized = normalize(raw);
  const Eigen::Matrix3d cov = covariance(normalized);
  const PrincipalComponents pc = first_eigenvector(cov);
  if (pc.degenerate) {
    return uniform_weights(raw.routers);  // nothing to discriminate on
  }
  return weights(normalized.routers, fuse(normalized, pc));
}

void write_allocation_csv(std::ostream& out, const WeightVector& w, const AllocationPlan& plan) {
  out << "router_id,weight,capacity_chunks\n";
  for (std::size_t i = 0; i < plan.routers.size(); ++i) {
    out << plan.routers[i] << ',' << format_double(w.w(static_cast<Eigen::Index>(i))) << ','
        << plan.capacity_chunks[i] << '\n';
  }
}

}  // namespace ndncache
