#pragma once

#include <cstdint>
#include <vector>

#include "elm/kernels.hpp"

namespace elm {

struct ClusterConfig {
    int k = 2;
    double fuzziness = 4.0;  // m > 1
    int max_iterations = 300;
    double centroid_tolerance = 1e-9;
    std::uint64_t seed = 1;
    Execution exec = Execution::Parallel;
};

struct ClusterResult {
    std::vector<std::vector<double>> centroids;   // k x dim
    std::vector<std::vector<double>> membership;  // n x k, rows sum to 1
    std::vector<double> objective_history;        // nonincreasing
    int iterations = 0;
};

/// Fuzzy C-means on row vectors. Degenerate zero-distance samples receive the
/// hard assignment (membership 1 for that cluster).
ClusterResult fuzzy_cmeans(const std::vector<std::vector<double>>& x, const ClusterConfig& cfg);

/// Per-feature standardization (zero mean, unit variance) of a feature table.
std::vector<std::vector<double>> standardize_rows(const std::vector<std::vector<double>>& x);

struct Dataset;

struct CriticalLineEstimate {
    std::vector<double> alphas;
    std::vector<double> lambdas;   // argmax-membership lambda per alpha
    int critical_cluster = 0;      // cluster whose line tracks lambda_c best
    double mean_abs_error = 0.0;   // mean |lambda - lambda_c(alpha)| of that line
};

/// Clusters the dataset's standardized features and extracts, per alpha, the
/// lambda of maximum membership. The "critical" cluster is the one whose line
/// is closest (mean over alphas) to the theoretical critical line.
CriticalLineEstimate critical_line_estimate(const Dataset& data, const ClusterResult& result);

}  // namespace elm
