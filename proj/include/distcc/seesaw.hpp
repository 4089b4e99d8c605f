#pragma once

// See-saw heuristic for the largest success probability a fixed-dimension
// quantum strategy can reach under a distinguishability cap.
//
// Holding the measurements fixed, the optimal states solve an SDP whose
// distinguishability constraint is expressed through a hinge operator:
// dist(rho_1..rho_N) <= p exactly when some Theta >= rho_x for all x has
// (1/N) tr Theta <= p.  Holding the states fixed, the optimal measurements
// decouple into one small SDP per question.  Alternating the two steps
// yields a monotonically non-decreasing success sequence; random restarts
// guard against poor local optima.  The result is a feasible strategy and
// therefore a lower bound on the true optimum, complementing the hierarchy's
// upper bound.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "distcc/conic.hpp"
#include "distcc/errors.hpp"
#include "distcc/quantum.hpp"
#include "distcc/task.hpp"

namespace distcc {

struct SeesawOptions {
  int restarts = 10;      // independent random initialisations
  int max_rounds = 200;   // state+measurement rounds per restart
  double tol = 1e-7;      // stop once a round improves by less than this
  std::uint64_t seed = 0; // base seed; restart k draws from stream (seed, k)
};

struct SeesawResult {
  double success = 0.0;         // of the returned (cleaned) strategy
  QuantumStrategy strategy;
  std::string status;           // "ok", or "no_improvement" when no round
                                // beat the first one by more than tol
  int best_restart = -1;
  int rounds = 0;               // rounds used by the winning restart
  std::vector<double> trajectory;  // winning restart's per-round successes
};

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Eigen::MatrixXcd random_ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = conic::Cplx(gauss(rng), gauss(rng));
  return a;
}

// Random full-rank POVM: Ginibre squares normalised by the inverse square
// root of their sum.
inline std::vector<Eigen::MatrixXcd> random_povm(int dim, int outcomes,
                                                 std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXcd> effects(static_cast<std::size_t>(outcomes));
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (auto& g : effects) {
    Eigen::MatrixXcd a = random_ginibre(dim, rng);
    g = a * a.adjoint() + 1e-6 * Eigen::MatrixXcd::Identity(dim, dim);
    total += g;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(total);
  Eigen::MatrixXcd root =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();
  for (auto& g : effects) g = (root * g * root).eval();
  return effects;
}

// Success probability of a (not necessarily validated) strategy.
inline double raw_success(const TaskSpec& t, const std::vector<Eigen::MatrixXcd>& states,
                          const std::vector<std::vector<Eigen::MatrixXcd>>& meas) {
  double s = 0.0;
  for (int x = 0; x < t.n_x; ++x)
    for (int y = 0; y < t.n_y; ++y)
      for (int z = 0; z < t.n_z; ++z) {
        double c = t.c(x, y, z);
        if (c != 0.0) s += c * (states[x] * meas[y][z]).trace().real();
      }
  return s;
}

// Optimal states for fixed measurements under the distinguishability cap.
// Returns false when the SDP does not reach an optimal status.
inline bool seesaw_state_step(const TaskSpec& t, int dim, double cap,
                              const std::vector<std::vector<Eigen::MatrixXcd>>& meas,
                              std::vector<Eigen::MatrixXcd>& states) {
  const int N = t.n_x;
  conic::Problem prob;
  std::vector<int> brho(N), bslack(N);
  for (int x = 0; x < N; ++x) brho[x] = prob.add_block(dim);
  int btheta = prob.add_block(dim);
  for (int x = 0; x < N; ++x) bslack[x] = prob.add_block(dim);
  int bt = prob.add_block(1);

  // Objective: maximize sum_x tr(G_x rho_x), G_x = sum_{y,z} c(x,y,z) M_{z|y}.
  for (int x = 0; x < N; ++x) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (int y = 0; y < t.n_y; ++y)
      for (int z = 0; z < t.n_z; ++z) {
        double c = t.c(x, y, z);
        if (c != 0.0) g += c * meas[y][z];
      }
    for (int r = 0; r < dim; ++r)
      for (int c = r; c < dim; ++c) prob.add_objective(brho[x], r, c, -g(r, c));
  }

  for (int x = 0; x < N; ++x) {
    int row = prob.add_constraint(1.0);  // tr rho_x = 1
    for (int r = 0; r < dim; ++r) prob.add_coefficient(row, brho[x], r, r, 1.0);
  }
  // Theta - rho_x - S_x = 0, entry by entry.
  for (int x = 0; x < N; ++x) {
    for (int r = 0; r < dim; ++r) {
      for (int c = r; c < dim; ++c) {
        if (r == c) {
          int row = prob.add_constraint(0.0);
          prob.add_coefficient(row, btheta, r, r, 1.0);
          prob.add_coefficient(row, brho[x], r, r, -1.0);
          prob.add_coefficient(row, bslack[x], r, r, -1.0);
        } else {
          int re = prob.add_constraint(0.0);
          prob.add_coefficient(re, btheta, r, c, conic::Cplx(0.5, 0.0));
          prob.add_coefficient(re, brho[x], r, c, conic::Cplx(-0.5, 0.0));
          prob.add_coefficient(re, bslack[x], r, c, conic::Cplx(-0.5, 0.0));
          int im = prob.add_constraint(0.0);
          prob.add_coefficient(im, btheta, r, c, conic::Cplx(0.0, 0.5));
          prob.add_coefficient(im, brho[x], r, c, conic::Cplx(0.0, -0.5));
          prob.add_coefficient(im, bslack[x], r, c, conic::Cplx(0.0, -0.5));
        }
      }
    }
  }
  // (1/N) tr Theta + t = cap.
  int row = prob.add_constraint(cap);
  for (int r = 0; r < dim; ++r) prob.add_coefficient(row, btheta, r, r, 1.0 / N);
  prob.add_coefficient(row, bt, 0, 0, 1.0);

  conic::Solution sol = prob.solve();
  if (!sol.ok()) return false;
  for (int x = 0; x < N; ++x)
    states[static_cast<std::size_t>(x)] =
        0.5 * (sol.x_blocks[brho[x]] + sol.x_blocks[brho[x]].adjoint());
  return true;
}

// Optimal measurement for question y given the states.
inline bool seesaw_measurement_step(const TaskSpec& t, int dim, int y,
                                    const std::vector<Eigen::MatrixXcd>& states,
                                    std::vector<Eigen::MatrixXcd>& effects) {
  const int D = t.n_z;
  conic::Problem prob;
  for (int z = 0; z < D; ++z) prob.add_block(dim);
  for (int z = 0; z < D; ++z) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int x = 0; x < t.n_x; ++x) {
      double c = t.c(x, y, z);
      if (c != 0.0) h += c * states[static_cast<std::size_t>(x)];
    }
    for (int r = 0; r < dim; ++r)
      for (int c = r; c < dim; ++c) prob.add_objective(z, r, c, -h(r, c));
  }
  // Completeness: sum_z M_z = identity.
  for (int r = 0; r < dim; ++r) {
    for (int c = r; c < dim; ++c) {
      if (r == c) {
        int row = prob.add_constraint(1.0);
        for (int z = 0; z < D; ++z) prob.add_coefficient(row, z, r, r, 1.0);
      } else {
        int re = prob.add_constraint(0.0);
        int im = prob.add_constraint(0.0);
        for (int z = 0; z < D; ++z) {
          prob.add_coefficient(re, z, r, c, conic::Cplx(0.5, 0.0));
          prob.add_coefficient(im, z, r, c, conic::Cplx(0.0, 0.5));
        }
      }
    }
  }
  conic::Solution sol = prob.solve();
  if (!sol.ok()) return false;
  for (int z = 0; z < D; ++z)
    effects[static_cast<std::size_t>(z)] =
        0.5 * (sol.x_blocks[z] + sol.x_blocks[z].adjoint());
  return true;
}

// Projects states onto exact density matrices and measurements onto exact
// POVMs; deviations are at the solver-feasibility scale.
inline QuantumStrategy seesaw_clean(int dim, std::vector<Eigen::MatrixXcd> states,
                                    std::vector<std::vector<Eigen::MatrixXcd>> meas) {
  for (auto& rho : states) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    rho /= rho.trace().real();
  }
  for (auto& effects : meas) {
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (auto& m : effects) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
      Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
      m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
      total += m;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(total);
    Eigen::MatrixXcd root =
        es.eigenvectors() *
        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().adjoint();
    for (auto& m : effects) m = (root * m * root).eval();
  }
  QuantumStrategy s;
  s.dim = dim;
  s.states = std::move(states);
  s.measurements = std::move(meas);
  return s;
}

}  // namespace detail

inline SeesawResult seesaw_max_success(const TaskSpec& task, int dim,
                                       double dist_cap,
                                       const SeesawOptions& opts = {}) {
  if (dim < 2) fail(errc::invalid_argument, "strategy dimension must be >= 2");
  if (opts.restarts < 1 || opts.max_rounds < 1)
    fail(errc::invalid_argument, "see-saw needs at least one restart and round");
  if (!(dist_cap <= 1.0 + 1e-9))
    fail(errc::invalid_argument, "distinguishability cap must lie in [1/N, 1]");
  if (!(dist_cap >= 1.0 / task.n_x - 1e-9))
    fail(errc::infeasible,
         "average distinguishability is at least 1/N for every strategy");

  SeesawResult best;
  bool any_ok = false;
  std::uint64_t stream = opts.seed;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(detail::splitmix64_next(stream));
    std::vector<std::vector<Eigen::MatrixXcd>> meas(
        static_cast<std::size_t>(task.n_y));
    for (auto& effects : meas) effects = detail::random_povm(dim, task.n_z, rng);
    std::vector<Eigen::MatrixXcd> states(static_cast<std::size_t>(task.n_x));

    std::vector<double> traj;
    bool failed = false;
    for (int round = 0; round < opts.max_rounds; ++round) {
      if (!detail::seesaw_state_step(task, dim, dist_cap, meas, states)) {
        failed = true;
        break;
      }
      bool meas_ok = true;
      for (int y = 0; y < task.n_y; ++y)
        if (!detail::seesaw_measurement_step(task, dim, y, states, meas[y])) {
          meas_ok = false;
          break;
        }
      if (!meas_ok) {
        failed = true;
        break;
      }
      traj.push_back(detail::raw_success(task, states, meas));
      if (traj.size() >= 2 && traj.back() - traj[traj.size() - 2] < opts.tol)
        break;
    }
    if (failed || traj.empty()) continue;
    any_ok = true;

    QuantumStrategy cleaned = detail::seesaw_clean(dim, states, meas);
    double value = quantum_success(task, cleaned);
    if (best.best_restart < 0 || value > best.success) {
      best.success = value;
      best.strategy = std::move(cleaned);
      best.best_restart = restart;
      best.rounds = static_cast<int>(traj.size());
      best.trajectory = std::move(traj);
    }
  }
  if (!any_ok)
    fail(errc::solver_failure, "all see-saw restarts failed to solve");
  best.status = best.trajectory.back() - best.trajectory.front() > opts.tol
                    ? "ok"
                    : "no_improvement";
  return best;
}

}  // namespace distcc
