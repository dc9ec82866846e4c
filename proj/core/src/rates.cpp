#include "sylflow/rates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

#include "sylflow/errors.hpp"
#include "sylflow/flows.hpp"
#include "sylflow/projector.hpp"

namespace sylflow {

namespace {

Index shared_dim(const std::vector<NodeEquation>& eqs) {
  if (eqs.empty()) throw DimensionError("no node equations");
  const Index d = eqs.front().unknown_dim();
  for (const auto& e : eqs) {
    if (e.unknown_dim() != d) throw DimensionError("node equations disagree on dimension");
  }
  return d;
}

Matrix average_gram(const std::vector<NodeEquation>& eqs) {
  const Index d = shared_dim(eqs);
  Matrix avg = Matrix::Zero(d, d);
  for (const auto& e : eqs) avg += pinv(e.H) * e.H;
  return avg / static_cast<double>(eqs.size());
}

Matrix jl_matrix(const std::vector<NodeEquation>& eqs, const Matrix& laplacian, double K) {
  shared_dim(eqs);
  if (laplacian.rows() != static_cast<Index>(eqs.size())) {
    throw DimensionError("Laplacian is " + std::to_string(laplacian.rows()) + "x" +
                         std::to_string(laplacian.cols()) + " for " + std::to_string(eqs.size()) +
                         " nodes");
  }
  return consensus_projection_system(K, laplacian, build_projectors(eqs)).system;
}

}  // namespace

SpectralRate r_of_K(const std::vector<NodeEquation>& eqs, const Matrix& laplacian, double K) {
  const Matrix jl = jl_matrix(eqs, laplacian, K);
  const int rank = numerical_rank(jl);
  if (rank == 0) throw DegenerateProblemError("J_L is zero; no rate is defined");
  const Vector eig = sym_eig_desc(jl);
  return {eig(rank - 1), rank};
}

double r0_limit(const std::vector<NodeEquation>& eqs) {
  const int rank = numerical_rank(stack_operators(eqs));
  if (rank == 0) throw DegenerateProblemError("stacked operator is zero; r0 is undefined");
  return sym_eig_desc(average_gram(eqs))(rank - 1);
}

std::optional<RateBounds> full_rank_bounds(const std::vector<NodeEquation>& eqs) {
  shared_dim(eqs);
  double lambda_max = 0.0;
  double lambda_min = std::numeric_limits<double>::infinity();
  for (const auto& e : eqs) {
    if (e.row_count() == 0 || numerical_rank(e.H) != e.row_count()) return std::nullopt;
    const Vector eig = sym_eig_desc(e.H * e.H.transpose());
    lambda_max = std::max(lambda_max, eig(0));
    lambda_min = std::min(lambda_min, eig(eig.size() - 1));
  }
  const Matrix h = stack_operators(eqs);
  const Vector f = sym_eig_desc(h.transpose() * h);
  const double nodes = static_cast<double>(eqs.size());
  return RateBounds{f(f.size() - 1) / (nodes * lambda_max), f(0) / (nodes * lambda_min)};
}

double rs_upper_bound(double K, double Ks, const Graph& g) {
  return std::min(1.0 + Ks, 1.0 + K * laplacian_spectrum(g).largest);
}

int common_kernel_dimension(const ClusterOperators& ops) {
  const Index block = static_cast<Index>(ops.n) * ops.n;
  Matrix stacked(block * ops.n, block);
  for (int i = 0; i < ops.n; ++i) stacked.middleRows(i * block, block) = ops.M[i];
  return static_cast<int>(block) - numerical_rank(stacked);
}

ClusteringRate clustering_rate(const ClusterOperators& ops, double K, const Matrix& outer_laplacian,
                               const std::vector<Matrix>& inner_laplacians) {
  const Matrix g = clustering_system(K, outer_laplacian, inner_laplacians, ops).system;
  ClusteringRate out{};
  out.rank_G = numerical_rank(g);
  const long n = ops.n;
  out.rank_bound = static_cast<int>(2 * n * n * n - n * n) - common_kernel_dimension(ops);
  if (out.rank_G == 0) throw DegenerateProblemError("G is zero; no rate is defined");

  const Eigen::VectorXcd eig = Eigen::EigenSolver<Matrix>(g, false).eigenvalues();
  std::vector<double> re(eig.size());
  out.min_real_part = std::numeric_limits<double>::infinity();
  out.max_imag_part = 0.0;
  bool complex_found = false;
  for (Index k = 0; k < eig.size(); ++k) {
    re[k] = eig(k).real();
    out.min_real_part = std::min(out.min_real_part, re[k]);
    const double im = std::abs(eig(k).imag());
    out.max_imag_part = std::max(out.max_imag_part, im);
    if (im > 1e-6 * std::abs(eig(k))) complex_found = true;
  }
  if (complex_found) {
    out.warning = "G has eigenvalues with non-negligible imaginary part (max |Im| = " +
                  std::to_string(out.max_imag_part) + "); the rate may be ill-conditioned";
  }
  std::sort(re.begin(), re.end(), std::greater<>());
  out.rate = re[out.rank_G - 1];
  return out;
}

std::optional<bool> rank_identity_check(const std::vector<NodeEquation>& eqs,
                                        const Matrix& laplacian, double K) {
  const int rank_h = numerical_rank(stack_operators(eqs));
  if (rank_h == 0) return std::nullopt;
  const Index d = shared_dim(eqs);
  const Index nodes = static_cast<Index>(eqs.size());
  return numerical_rank(jl_matrix(eqs, laplacian, K)) == nodes * d - d + rank_h;
}

std::optional<RateFit> fit_log_rate(const std::vector<double>& t, const std::vector<double>& e,
                                    double tail_fraction) {
  if (t.size() != e.size()) throw DimensionError("fit_log_rate: t and e differ in length");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
    throw ContractViolation("fit_log_rate: tail_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> usable;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (std::isfinite(e[k]) && e[k] >= kErrorFloor) usable.push_back(k);
  }
  const auto take = static_cast<std::size_t>(std::ceil(tail_fraction * usable.size()));
  if (take < 10) return std::nullopt;
  const std::size_t first = usable.size() - take;
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t k = first; k < usable.size(); ++k) {
    t_mean += t[usable[k]];
    y_mean += std::log(e[usable[k]]);
  }
  t_mean /= static_cast<double>(take);
  y_mean /= static_cast<double>(take);
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t k = first; k < usable.size(); ++k) {
    const double dt = t[usable[k]] - t_mean;
    const double dy = std::log(e[usable[k]]) - y_mean;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt <= 0.0) return std::nullopt;
  const double slope = sty / stt;
  const double r2 = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  return RateFit{-slope / 2.0, r2, take};
}

std::optional<RateFit> fit_log_rate(const Trajectory& traj, double tail_fraction) {
  std::vector<double> t, e;
  t.reserve(traj.samples.size());
  e.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    t.push_back(s.t);
    e.push_back(s.e_total);
  }
  return fit_log_rate(t, e, tail_fraction);
}

std::optional<double> measured_rate(const std::vector<double>& t, const std::vector<double>& e,
                                    double tail_fraction) {
  const auto fit = fit_log_rate(t, e, tail_fraction);
  if (!fit) return std::nullopt;
  return fit->rate;
}

std::optional<double> measured_rate(const Trajectory& traj, double tail_fraction) {
  const auto fit = fit_log_rate(traj, tail_fraction);
  if (!fit) return std::nullopt;
  return fit->rate;
}

}  // namespace sylflow
