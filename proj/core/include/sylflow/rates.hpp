#pragma once

// Closed-form convergence-rate quantities and rates measured from trajectories.

#include <optional>
#include <string>
#include <vector>

#include "sylflow/graph.hpp"
#include "sylflow/partition.hpp"
#include "sylflow/simulate.hpp"

namespace sylflow {

struct SpectralRate {
  double rate;  // smallest nonzero eigenvalue
  int rank;     // numerical rank of the matrix it came from
};

/// J_L = K (L (x) I_d) + diag{H_i^+ H_i}; returns lambda_{rank(J_L)}(J_L) and
/// rank(J_L). Throws DegenerateProblemError when J_L vanishes.
SpectralRate r_of_K(const std::vector<NodeEquation>& eqs, const Matrix& laplacian, double K);

/// lambda_{rank(H)} of (1/N) sum_i H_i^+ H_i with H the stacked operator.
double r0_limit(const std::vector<NodeEquation>& eqs);

struct RateBounds {
  double lower;
  double upper;
};

/// With lambda^* = max_i lambda_1(H_i H_i^T), lambda_* = min_i lambda_min(H_i H_i^T)
/// and f = H^T H over the stacked node operators:
///   (lambda_{min}(f) / (N lambda^*), lambda_1(f) / (N lambda_*)).
/// Empty unless every H_i has full row rank.
std::optional<RateBounds> full_rank_bounds(const std::vector<NodeEquation>& eqs);

/// min{1 + Ks, 1 + K lambda_1(L)}.
double rs_upper_bound(double K, double Ks, const Graph& g);

struct ClusteringRate {
  double rate;           // lambda_{rank(G)}(G), real parts sorted descending
  int rank_G;
  int rank_bound;        // 2 n^3 - n^2 - dim(cap_i ker M_i)
  double min_real_part;
  double max_imag_part;
  std::optional<std::string> warning;  // set when some |Im| > 1e-6 |lambda|
};

ClusteringRate clustering_rate(const ClusterOperators& ops, double K, const Matrix& outer_laplacian,
                               const std::vector<Matrix>& inner_laplacians);

/// dim(cap_i ker M_i), from the vertically stacked M_i.
int common_kernel_dimension(const ClusterOperators& ops);

/// rank(J_L) == N d - d + rank(H). Empty when rank(H) = 0.
std::optional<bool> rank_identity_check(const std::vector<NodeEquation>& eqs,
                                        const Matrix& laplacian, double K);

inline constexpr double kErrorFloor = 1e-20;
inline constexpr double kDefaultTailFraction = 0.5;

struct RateFit {
  double rate;       // -slope / 2
  double r_squared;  // coefficient of determination of the log-linear fit
  std::size_t samples;
};

/// Least-squares fit of log e(t) ~ a + s t over the last `tail_fraction` of
/// the samples with e >= kErrorFloor. Empty when fewer than 10 remain.
std::optional<RateFit> fit_log_rate(const std::vector<double>& t, const std::vector<double>& e,
                                    double tail_fraction = kDefaultTailFraction);
std::optional<RateFit> fit_log_rate(const Trajectory& traj,
                                    double tail_fraction = kDefaultTailFraction);

/// Fits log e(t) ~ a + s t over the last `tail_fraction` of the samples with
/// e >= kErrorFloor and returns -s / 2. Empty (floor reached) when fewer than
/// 10 such samples remain.
std::optional<double> measured_rate(const std::vector<double>& t, const std::vector<double>& e,
                                    double tail_fraction = kDefaultTailFraction);
std::optional<double> measured_rate(const Trajectory& traj,
                                    double tail_fraction = kDefaultTailFraction);

}  // namespace sylflow
