#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ndncache/metrics.hpp"
#include "ndncache/topology.hpp"

namespace ndncache {

enum class NormalizationMode { MinMax, ZScore };

/// I x 3 feature table: one row per router, columns (bc, estimated_pi,
/// estimated_hi).
struct FeatureMatrix {
  std::vector<NodeId> routers;  // row order
  Eigen::Matrix<double, Eigen::Dynamic, 3> values;
  NormalizationMode mode = NormalizationMode::MinMax;
};

FeatureMatrix make_feature_matrix(const std::vector<RouterFeatureRecord>& records,
                                  NormalizationMode mode = NormalizationMode::MinMax);

/// Column-wise normalization. MinMax maps each column onto [0, 1]; ZScore
/// centers to mean 0 and unit population standard deviation. A constant
/// column maps to all zeros in both modes. Requires at least 2 rows.
FeatureMatrix normalize(const FeatureMatrix& features);

/// 3x3 covariance of the normalized table, computed on mean-centered
/// columns with the 1/I (population) divisor.
Eigen::Matrix3d covariance(const FeatureMatrix& normalized);

struct PrincipalComponents {
  Eigen::Vector3d pc = Eigen::Vector3d::Zero();           // rescaled, sums to 1
  Eigen::Vector3d eigenvector = Eigen::Vector3d::Zero();  // unit dominant eigenvector
  double eigenvalue = 0.0;
  double residual = 0.0;  // ||Cov v - lambda v||_inf
  bool degenerate = false;
};

/// Dominant eigenpair by power iteration from (1,1,1)/sqrt(3), at most 10^4
/// iterations, residual tolerance 1e-10. The eigenvector sign is fixed so
/// its component sum is positive, then components are rescaled to sum to 1;
/// components driven negative by that rescaling are clamped to 0 and the
/// rest re-normalized. A (numerically) zero matrix yields the degenerate
/// flag. Throws std::invalid_argument on a non-symmetric input and
/// std::runtime_error when the residual tolerance is not met.
PrincipalComponents first_eigenvector(const Eigen::Matrix3d& cov);

/// Projects each normalized feature row onto the principal components:
/// F[i] = x1*PC1 + x2*PC2 + x3*PC3.
Eigen::VectorXd fuse(const FeatureMatrix& normalized, const PrincipalComponents& pc);

struct WeightVector {
  std::vector<NodeId> routers;
  Eigen::VectorXd w;  // positive, sums to 1
};

/// Fused values floored at epsilon = 0.01 and normalized to sum 1.
WeightVector weights(const std::vector<NodeId>& routers, const Eigen::VectorXd& fused);

WeightVector uniform_weights(const std::vector<NodeId>& routers);
WeightVector degree_weights(const std::vector<NodeId>& routers, const CentralityVector& degrees);

struct AllocationPlan {
  std::vector<NodeId> routers;
  std::vector<int> capacity_chunks;
  int total = 0;
};

/// Splits `total_chunks` by largest remainder on the real quotas
/// total * w_i, with every router guaranteed at least 1 chunk. The result
/// sums to total exactly. Requires total_chunks >= router count.
AllocationPlan allocate(const WeightVector& w, int total_chunks);

/// The full proposed-scheme pipeline: normalize, covariance, PCA, fuse,
/// weights. Falls back to uniform weights when the covariance is degenerate
/// (no variance to discriminate routers).
WeightVector fused_weights(const FeatureMatrix& raw);

void write_allocation_csv(std::ostream& out, const WeightVector& w, const AllocationPlan& plan);

}  // namespace ndncache
