#include "scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "sylflow/errors.hpp"
#include "sylflow/fixtures.hpp"
#include "sylflow/graph.hpp"
#include "sylflow/oracle.hpp"
#include "sylflow/projector.hpp"
#include "sylflow/rates.hpp"
#include "sylflow/simulate.hpp"

namespace sylflow::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string fmt(const char* pattern, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Stride giving roughly `target` samples over the run.
int stride_for(double t_end, double dt, int target = 2000) {
  return std::max(1, static_cast<int>(std::lround(t_end / dt / target)));
}

SimulationSetup plain_setup(FlowKind flow, const SylvesterProblem& p, PartitionScheme scheme,
                            Graph g, double K, double t_end, double Ks = 0.0,
                            const PartitionOptions& options = {}) {
  Partition part = make_partition(p, scheme, options, &g);
  SimulationSetup s{flow, p, std::move(part), std::move(g), {}, K, Ks, {}, {}};
  s.integrator.t_end = t_end;
  s.integrator.sample_stride = stride_for(t_end, default_step(s));
  return s;
}

double sample_error_at(const Trajectory& tr, double t) {
  for (const auto& s : tr.samples) {
    if (s.t >= t - 1e-9) return s.e_total;
  }
  return tr.samples.back().e_total;
}

double sample_time_at(const Trajectory& tr, double t) {
  for (const auto& s : tr.samples) {
    if (s.t >= t - 1e-9) return s.t;
  }
  return tr.samples.back().t;
}

const std::vector<double> kExample1Ks{1.0, 10.0, 100.0};

void example1_convergence(Report& r) {
  const auto t0 = Clock::now();
  const SylvesterProblem p = fixtures::example1();
  constexpr double kTEnd = 2000.0;
  for (double K : kExample1Ks) {
    const SimulationSetup s = plain_setup(FlowKind::kConsensusProjection, p,
                                          PartitionScheme::kBcColumn, make_cycle(5), K, kTEnd);
    const Trajectory tr = simulate(s);
    const double theory = r_of_K(s.partition.nodes, s.graph.laplacian(), K).rate;
    const auto fit = fit_log_rate(tr);
    const std::string tag = fmt("K=%g", K);
    const double e0 = tr.samples.front().e_total;
    const double e200 = sample_error_at(tr, 200.0);
    r.add(tag + " e(200)/e(0) <= 1e-6", e200 <= 1e-6 * e0,
          fmt("e(%.4g)/e(0) = %.3e", sample_time_at(tr, 200.0), e200 / e0));
    r.add(tag + " log e(t) asymptotically linear (tail R^2 >= 0.999)",
          fit && fit->r_squared >= 0.999, fit ? fmt("R^2 = %.6f", fit->r_squared) : "floor reached");
    const double ratio = fit ? fit->rate / theory : NAN;
    r.add(tag + " measured rate within 10% of r(K)", fit && std::abs(ratio - 1.0) <= 0.10,
          fmt("measured %.6e, r(K) %.6e, ratio %.4f", fit ? fit->rate : NAN, theory, ratio));
  }
  const double secs = seconds_since(t0);
  r.add("runtime <= 30 s", secs <= 30.0, fmt("%.2f s", secs));
}

void rate_limit_law(Report& r) {
  const auto t0 = Clock::now();
  const SylvesterProblem p = fixtures::example1();
  const auto eqs = bc_column_partition(p);
  const Matrix lap = make_cycle(5).laplacian();
  const std::vector<double> ks{1, 5, 10, 50, 100, 1e3, 1e4};
  std::vector<double> rates;
  std::string listing;
  for (double K : ks) {
    rates.push_back(r_of_K(eqs, lap, K).rate);
    listing += fmt("r(%g)=%.6e ", K, rates.back());
  }
  bool monotone = true, bounded = true;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (k > 0 && rates[k - 1] > rates[k] + 1e-9) monotone = false;
    if (rates[k] > 1.0 + 1e-9) bounded = false;
  }
  const double r0 = r0_limit(eqs);
  r.add("r(K) nondecreasing", monotone, listing);
  r.add("r(K) <= 1", bounded);
  r.add("r(1e4) >= 0.98 r0", rates.back() >= 0.98 * r0,
        fmt("r(1e4) = %.6e, r0 = %.6e, ratio %.5f", rates.back(), r0, rates.back() / r0));
  const double secs = seconds_since(t0);
  r.add("runtime <= 10 s", secs <= 10.0, fmt("%.2f s", secs));
}

void full_rank_sandwich(Report& r) {
  const auto eqs = bc_column_partition(fixtures::example1());
  const auto bounds = full_rank_bounds(eqs);
  r.add("every H_i has full row rank", bounds.has_value());
  if (!bounds) return;
  const double r0 = r0_limit(eqs);
  r.add("lower <= r0 <= upper", bounds->lower <= r0 + 1e-9 && r0 <= bounds->upper + 1e-9,
        fmt("lower %.6e, r0 %.6e, upper %.6e", bounds->lower, r0, bounds->upper));
}

void example4_reproduction(Report& r) {
  const auto t0 = Clock::now();
  const SylvesterProblem p = fixtures::example4();
  PartitionOptions opts;
  opts.row_blocks = fixtures::example4_row_blocks();
  constexpr double kK = 10.0;
  const SimulationSetup s = plain_setup(FlowKind::kAugmented, p, PartitionScheme::kFullRowColumn,
                                        fixtures::example4_graph(), kK, 5000.0, 0.0, opts);
  const Trajectory tr = simulate(s);
  std::vector<Matrix> limits;
  for (int i = 0; i < s.graph.node_count(); ++i) limits.push_back(tr.node_solution(i));
  double spread = 0.0;
  for (std::size_t i = 0; i < limits.size(); ++i) {
    for (std::size_t j = i + 1; j < limits.size(); ++j) {
      spread = std::max(spread, (limits[i] - limits[j]).norm());
    }
  }
  r.add("X-block limits agree pairwise <= 1e-5", spread <= 1e-5, fmt("max ||X_i - X_j||_F = %.3e", spread));
  double worst_res = 0.0;
  for (const auto& x : limits) {
    worst_res = std::max(worst_res, (p.A() * x + x * p.A().transpose() + Matrix::Identity(6, 6)).norm());
  }
  r.add("||A X + X A^T + I||_F <= 1e-5 at every node", worst_res <= 1e-5, fmt("max residual %.3e", worst_res));
  const double dev = (limits.front() - fixtures::example4_P_star()).cwiseAbs().maxCoeff();
  r.add("elementwise match to reference P* within 2e-3", dev <= 2e-3, fmt("max |X - P*| = %.3e", dev));
  r.add("limit is positive definite", positive_definite_check(limits.front()));
  const double secs = seconds_since(t0);
  r.add("runtime <= 60 s", secs <= 60.0, fmt("%.2f s", secs));
}

void symmetrization(Report& r) {
  const SylvesterProblem p = fixtures::example4();
  constexpr double kK = 10.0, kKs = 10.0;
  const SimulationSetup s = plain_setup(FlowKind::kSymmetrization, p, PartitionScheme::kBcColumn,
                                        make_cycle(6), kK, 3000.0, kKs);
  const Trajectory tr = simulate(s);
  double asym = 0.0, res = 0.0;
  for (int i = 0; i < s.graph.node_count(); ++i) {
    const Matrix x = tr.node_solution(i);
    asym = std::max(asym, (x - x.transpose()).norm());
    res = std::max(res, (p.A() * x + x * p.B() - p.C()).norm());
  }
  r.add("limit symmetric, ||X - X^T||_F <= 1e-7", asym <= 1e-7, fmt("max %.3e", asym));
  r.add("limit solves the equation to 1e-6", res <= 1e-6, fmt("max residual %.3e", res));
  const auto rate = measured_rate(tr);
  const double bound = rs_upper_bound(kK, kKs, s.graph);
  r.add("measured rate <= min{1+Ks, 1+K lambda_1(L)} + 5%", rate && *rate <= 1.05 * bound,
        fmt("measured %.6e, bound %.6e", rate.value_or(NAN), bound));
}

void clustering(Report& r) {
  const SylvesterProblem p = fixtures::example1();
  const int n = 5;
  const ClusterOperators ops = clustering_partition(p);
  const Matrix outer = make_complete(n).laplacian();
  const std::vector<Matrix> inner(n, make_complete(n).laplacian());

  std::vector<double> rates;
  bool rank_ok = true, real_ok = true;
  std::string listing, ranks;
  double min_real = INFINITY;
  for (double K : kExample1Ks) {
    const ClusteringRate cr = clustering_rate(ops, K, outer, inner);
    rates.push_back(cr.rate);
    listing += fmt("r*(%g)=%.6e ", K, cr.rate);
    ranks += fmt("K=%g: rank(G)=%g bound=%g ", K, cr.rank_G, cr.rank_bound);
    rank_ok = rank_ok && cr.rank_G <= cr.rank_bound;
    real_ok = real_ok && cr.min_real_part >= -1e-8;
    min_real = std::min(min_real, cr.min_real_part);
  }
  const bool monotone = rates[0] <= rates[1] + 1e-9 && rates[1] <= rates[2] + 1e-9;
  r.add("r*(K) nondecreasing over K in {1,10,100}", monotone, listing);
  r.add("rank(G) <= 2n^3 - n^2 - dim(cap ker M_i)", rank_ok, ranks);
  r.add("all eigenvalues of G have real part >= -1e-8", real_ok, fmt("min real part %.3e", min_real));

  SimulationSetup s{FlowKind::kClustering,
                    p,
                    make_partition(p, PartitionScheme::kClustering),
                    make_complete(n),
                    std::vector<Graph>(n, make_complete(n)),
                    100.0,
                    0.0,
                    {},
                    {}};
  s.integrator.t_end = 3000.0;
  s.integrator.sample_stride = 1000;
  const Trajectory tr = simulate(s);
  const double e_final = tr.samples.back().e_total;
  r.add("x-blocks reach the oracle X*, final total error <= 1e-6 (K=100)", e_final <= 1e-6,
        fmt("e(%g) = %.3e", tr.samples.back().t, e_final));
}

void resolution_tradeoff(Report& r) {
  const SylvesterProblem p = fixtures::example1();
  constexpr double kTEnd = 2000.0;
  const SimulationSetup coarse = plain_setup(FlowKind::kConsensusProjection, p,
                                             PartitionScheme::kBcColumn, make_cycle(5), 1.0, kTEnd);
  const SimulationSetup fine = plain_setup(FlowKind::kConsensusProjection, p,
                                           PartitionScheme::kHighRes, make_cycle(25), 1.0, kTEnd);
  const auto rc = measured_rate(simulate(coarse));
  const auto rf = measured_rate(simulate(fine));
  const double tc = r_of_K(coarse.partition.nodes, coarse.graph.laplacian(), 1.0).rate;
  const double tf = r_of_K(fine.partition.nodes, fine.graph.laplacian(), 1.0).rate;
  r.add("5-node measured rate > 25-node measured rate (cycles, K=1)", rc && rf && *rc > *rf,
        fmt("5-node %.4e (r(K) %.4e), ", rc.value_or(NAN), tc) +
            fmt("25-node %.4e (r(K) %.4e)", rf.value_or(NAN), tf));
}

// --- property suite -------------------------------------------------------

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
  return m;
}

Matrix random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  return qr.householderQ();
}

void property_suite(Report& r) {
  std::mt19937_64 rng(20240917);

  double penrose = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = random_matrix(rng, 4, 6);
    if (trial % 2 == 1) a.row(3) = a.row(0) + a.row(1);
    const Matrix ap = pinv(a);
    penrose = std::max({penrose, (a * ap * a - a).norm(), (ap * a * ap - ap).norm(),
                        (a * ap - (a * ap).transpose()).norm(), (ap * a - (ap * a).transpose()).norm()});
  }
  r.add("Penrose conditions", penrose <= 1e-9, fmt("max violation %.2e", penrose));

  double idem = 0.0, member = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix h = random_matrix(rng, 3, 7);
    const Vector c = random_matrix(rng, 3, 1);
    const AffineProjector proj(h, c);
    const Matrix lin = proj.linear_part();
    idem = std::max(idem, (lin * lin - lin).norm());
    const Vector y = proj.apply(random_matrix(rng, 7, 1));
    member = std::max(member, (h * y - c).norm() / (1.0 + c.norm()));
    idem = std::max(idem, (proj.apply(y) - y).norm());
  }
  r.add("projector idempotence", idem <= 1e-9, fmt("max %.2e", idem));
  r.add("projector membership", member <= 1e-8, fmt("max %.2e", member));

  const Matrix m = random_matrix(rng, 4, 3);
  r.add("vec/unvec roundtrip", unvec(vec(m), 4, 3) == m);

  const LaplacianSpectrum c5 = laplacian_spectrum(make_cycle(5));
  const double expected_gap = 2.0 - 2.0 * std::cos(2.0 * M_PI / 5.0);
  const double expected_top = 2.0 - 2.0 * std::cos(4.0 * M_PI / 5.0);
  const LaplacianSpectrum k4 = laplacian_spectrum(make_complete(4));
  const bool lap_ok = std::abs(c5.algebraic_connectivity - expected_gap) <= 1e-12 &&
                      std::abs(c5.largest - expected_top) <= 1e-12 &&
                      std::abs(k4.algebraic_connectivity - 4.0) <= 1e-12 &&
                      std::abs(k4.largest - 4.0) <= 1e-12 &&
                      make_cycle(6).laplacian().rowwise().sum().norm() == 0.0;
  r.add("Laplacian spectral facts (C5 circulant, K4, zero row sums)", lap_ok);

  // Equilibrium stationarity.
  {
    const SylvesterProblem p = fixtures::example1();
    const Vector xs = vec(direct_solve(p).X_star);
    const auto eqs = bc_column_partition(p);
    const Graph g = make_cycle(5);
    const FlowState st = FlowState::replicated(5, xs);
    const double cp = ConsensusProjectionFlow(1.0, g, build_projectors(eqs)).evaluate(st).x.norm();
    const double ls = LeastSquaresFlow(1.0, g, eqs).evaluate(st).x.norm();

    const SylvesterProblem lyap = fixtures::example4();
    const Vector ys = vec(direct_solve(lyap).X_star);
    const auto leqs = bc_column_partition(lyap);
    const double cps = SymmetrizationFlow(10.0, 10.0, make_cycle(6), build_projectors(leqs))
                           .evaluate(FlowState::replicated(6, ys))
                           .x.norm();

    const ClusterOperators ops = clustering_partition(p);
    std::vector<Graph> inner(5, make_complete(5));
    FlowState cs = FlowState::replicated(5, xs, 25);
    for (int i = 0; i < 5; ++i) {
      const Matrix li = kron(inner[i].laplacian(), Matrix::Identity(5, 5));
      cs.aux(i) = pinv(li) * (ops.M[i] * xs - ops.C_tilde[i]);
    }
    const FlowState cd = ClusteringFlow(1.0, DoubleLayerNetwork(make_complete(5), inner), ops).evaluate(cs);
    const double cl = std::sqrt(cd.x.squaredNorm() + cd.z.squaredNorm());
    const double worst = std::max({cp, ls, cps, cl});
    r.add("equilibrium stationarity (cp, cps, ls, clustering) <= 1e-10", worst <= 1e-10,
          fmt("cp %.1e, ls %.1e, ", cp, ls) + fmt("cps %.1e, clustering %.1e", cps, cl));
  }

  // Limit formula, positive invariance and rank identity on random instances.
  int limit_fail = 0, rank_fail = 0, invariance_fail = 0;
  double worst_limit = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const bool unique = trial < 10;
    const SylvesterProblem p = random_consistent_problem(rng, unique);
    const auto eqs = bc_column_partition(p);
    const Graph g = make_cycle(3);
    const SpectralRate rate = r_of_K(eqs, g.laplacian(), 1.0);
    SimulationSetup s{FlowKind::kConsensusProjection, p, make_partition(p, PartitionScheme::kBcColumn),
                      g, {}, 1.0, 0.0, {}, {}};
    s.init.kind = InitSettings::Kind::kRandom;
    s.init.seed = 1000 + trial;
    s.integrator.t_end = std::min(20000.0, std::ceil(18.0 / rate.rate));
    s.integrator.sample_stride = 50;
    const Trajectory tr = simulate(s);
    const PreparedRun run = prepare(s);
    const Vector lim = flow_limit(eqs, run.initial);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) dev = std::max(dev, (tr.final_state.node(i) - lim).norm());
    worst_limit = std::max(worst_limit, dev);
    if (dev > 1e-6) ++limit_fail;
    // Boundedness: every sampled total error stays below the initial one.
    const double e0 = tr.samples.front().e_total;
    for (const auto& smp : tr.samples) {
      if (std::sqrt(smp.e_total) > std::sqrt(e0) + 1e-6) {
        ++invariance_fail;
        break;
      }
    }
    const auto identity = rank_identity_check(eqs, g.laplacian(), 1.0);
    if (!identity || !*identity) ++rank_fail;
  }
  r.add("flow limit matches oracle flow_limit <= 1e-6 (10 Case I + 10 Case II)", limit_fail == 0,
        fmt("failures %g, worst deviation %.2e", limit_fail, worst_limit));
  r.add("positive invariance: ||x(t) - 1(x)y*|| <= ||x(0) - 1(x)y*|| + 1e-6", invariance_fail == 0,
        fmt("failures %g", invariance_fail));
  r.add("rank(J_L) = N d - d + rank(H) on the same instances", rank_fail == 0, fmt("failures %g", rank_fail));
}

// --- fixture-only scenarios -------------------------------------------------

void example2(Report& r) {
  constexpr double kTEnd = 2000.0;
  const SylvesterProblem p1 = fixtures::example2(1);
  const SylvesterProblem p2 = fixtures::example2(2);
  const auto run = [&](const SylvesterProblem& p, PartitionScheme scheme) {
    const SimulationSetup s = plain_setup(FlowKind::kConsensusProjection, p, scheme, make_cycle(5), 1.0, kTEnd);
    return std::make_pair(measured_rate(simulate(s)), r_of_K(s.partition.nodes, s.graph.laplacian(), 1.0).rate);
  };
  const auto [m1, t1] = run(p1, PartitionScheme::kBcColumn);
  const auto [m2, t2] = run(p2, PartitionScheme::kBcColumn);
  const auto [m1r, t1r] = run(p1, PartitionScheme::kAcRow);
  r.add("data set 2 converges faster than data set 1 (column partition)", m1 && m2 && *m2 > *m1,
        fmt("set 1 %.4e (r(K) %.4e), ", m1.value_or(NAN), t1) + fmt("set 2 %.4e (r(K) %.4e)", m2.value_or(NAN), t2));
  r.add("column and row partitions of data set 1 converge at different rates",
        m1 && m1r && std::abs(*m1 - *m1r) > 0.05 * std::max(*m1, *m1r),
        fmt("column %.4e, row %.4e", m1.value_or(NAN), m1r.value_or(NAN)) + fmt(" (r(K) row %.4e)", t1r));
}

struct CriterionDef {
  const char* title;
  std::function<void(Report&)> body;
};

const std::vector<CriterionDef>& criteria() {
  static const std::vector<CriterionDef> defs{
      {"Example 1 exponential convergence under consensus + projection", example1_convergence},
      {"rate limit law for r(K)", rate_limit_law},
      {"full-row-rank bounds sandwich r0", full_rank_sandwich},
      {"Example 4 Lyapunov solution by the augmented flow", example4_reproduction},
      {"symmetrization flow on the Example 4 Lyapunov instance", symmetrization},
      {"clustering flow on Example 1", clustering},
      {"data resolution vs convergence speed", resolution_tradeoff},
      {"property suites", property_suite},
  };
  return defs;
}

Report timed(std::string title, const std::vector<std::function<void(Report&)>>& bodies) {
  Report r;
  r.title = std::move(title);
  const auto t0 = Clock::now();
  for (const auto& body : bodies) {
    try {
      body(r);
    } catch (const std::exception& e) {
      r.add("scenario completed", false, std::string("exception: ") + e.what());
    }
  }
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace

bool Report::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

Report run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw DimensionError("criterion ids run from 1 to 8");
  const CriterionDef& def = criteria()[id - 1];
  return timed("criterion " + std::to_string(id) + ": " + def.title, {def.body});
}

const std::vector<std::string_view>& fixture_names() {
  static const std::vector<std::string_view> names{"example1", "example2", "example3", "example4",
                                                   "example5"};
  return names;
}

std::optional<Report> run_fixture(std::string_view name) {
  const auto& c = criteria();
  if (name == "example1") return timed("example1", {c[0].body, c[1].body, c[2].body});
  if (name == "example2") return timed("example2", {example2});
  if (name == "example3") return timed("example3", {c[6].body});
  if (name == "example4") return timed("example4", {c[3].body, c[4].body});
  if (name == "example5") return timed("example5", {c[5].body});
  return std::nullopt;
}

void print_report(std::ostream& os, const Report& report) {
  for (const auto& c : report.checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  os << (report.passed() ? "PASS " : "FAIL ") << report.title << fmt(" (%.2f s)", report.seconds) << '\n';
}

SylvesterProblem random_consistent_problem(std::mt19937_64& rng, bool unique, int n) {
  std::uniform_real_distribution<double> spread(1.0, 2.0);
  std::uniform_real_distribution<double> far(2.0, 3.0);
  Vector a(n), b(n);
  for (int k = 0; k < n; ++k) {
    a(k) = unique ? spread(rng) : far(rng);
    b(k) = spread(rng);
  }
  if (!unique) {
    a(0) = 1.0;
    b(0) = -1.0;  // a_0 + b_0 = 0; every other a_i + b_j stays >= 1
  }
  const auto shaped = [&](const Vector& eig) {
    Matrix t = eig.asDiagonal();
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) t(i, j) = u(rng);
    }
    const Matrix q = random_orthogonal(rng, n);
    return Matrix(q * t * q.transpose());
  };
  const Matrix A = shaped(a);
  const Matrix B = shaped(b);
  const Matrix x0 = random_matrix(rng, n, n);
  return {A, B, A * x0 + x0 * B};
}

}  // namespace sylflow::cli
