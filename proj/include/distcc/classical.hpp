#pragma once

// Classical one-way resources: (possibly randomized) encodings, their
// distinguishability, optimal decoding, the exact LP trade-off frontier
// between distinguishability and task success, and closed-form lower bounds
// on the distinguishability needed for a given success level.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "distcc/conic.hpp"
#include "distcc/errors.hpp"
#include "distcc/graph.hpp"
#include "distcc/task.hpp"

namespace distcc {

// Randomized encoding p_e(m|x): column x holds the message distribution for
// input x.  Stored objects are exactly column-stochastic (validated at 1e-9,
// then rescaled).
struct Encoding {
  int n_messages = 0;
  int n_inputs = 0;
  Eigen::MatrixXd probs;  // (message, input)
};

inline Encoding make_encoding(Eigen::MatrixXd probs) {
  const int R = static_cast<int>(probs.rows());
  const int N = static_cast<int>(probs.cols());
  if (R < 1 || N < 1) fail(errc::invalid_argument, "encoding must be non-empty");
  for (int x = 0; x < N; ++x) {
    double total = 0.0;
    for (int m = 0; m < R; ++m) {
      double v = probs(m, x);
      if (v < -1e-12) fail(errc::negative_coefficient, "negative encoding probability");
      if (v < 0.0) probs(m, x) = 0.0;
      total += std::max(v, 0.0);
    }
    if (std::abs(total - 1.0) > 1e-9)
      fail(errc::not_normalized, "encoding column does not sum to 1");
    probs.col(x) /= total;
  }
  return Encoding{R, N, std::move(probs)};
}

inline Encoding identity_encoding(int N) {
  return make_encoding(Eigen::MatrixXd::Identity(N, N));
}

// D(enc) = sum_m max_x p_x p_e(m|x): the best average guessing probability
// for the sender's input given the message.
inline double classical_distinguishability(const Encoding& enc,
                                           const Eigen::VectorXd& prior) {
  if (prior.size() != enc.n_inputs)
    fail(errc::shape_mismatch, "prior length differs from encoding inputs");
  double total_prior = 0.0;
  for (int x = 0; x < enc.n_inputs; ++x) {
    if (prior(x) < 0.0) fail(errc::invalid_argument, "negative prior entry");
    total_prior += prior(x);
  }
  if (std::abs(total_prior - 1.0) > 1e-9)
    fail(errc::not_normalized, "prior must sum to 1");
  double d = 0.0;
  for (int m = 0; m < enc.n_messages; ++m) {
    double best = 0.0;
    for (int x = 0; x < enc.n_inputs; ++x)
      best = std::max(best, prior(x) * enc.probs(m, x));
    d += best;
  }
  return d;
}

struct ClassicalSuccess {
  double value = 0.0;
  Eigen::MatrixXi decoding;  // (message, y) -> z, ties broken toward smaller z
};

// Best achievable success for a fixed encoding: decode each (message, y)
// cell by the outcome maximizing the accumulated coefficient mass.
inline ClassicalSuccess classical_success_given_encoding(const TaskSpec& t,
                                                         const Encoding& enc) {
  if (enc.n_inputs != t.n_x)
    fail(errc::shape_mismatch, "encoding inputs differ from task inputs");
  ClassicalSuccess out;
  out.decoding.resize(enc.n_messages, t.n_y);
  for (int m = 0; m < enc.n_messages; ++m)
    for (int y = 0; y < t.n_y; ++y) {
      double best = -1.0;
      int best_z = 0;
      for (int z = 0; z < t.n_z; ++z) {
        double g = 0.0;
        for (int x = 0; x < t.n_x; ++x) g += t.c(x, y, z) * enc.probs(m, x);
        if (g > best + 1e-15) {
          best = g;
          best_z = z;
        }
      }
      out.decoding(m, y) = best_z;
      out.value += best;
    }
  return out;
}

// Equivalent min-form for binary-output tasks:
//   S = 1 - sum_{m,y} min_z sum_x c(x,y,z) p_e(m|x).
inline double classical_success_min_form(const TaskSpec& t, const Encoding& enc) {
  if (t.n_z != 2)
    fail(errc::invalid_argument, "min-form applies to binary-output tasks only");
  if (enc.n_inputs != t.n_x)
    fail(errc::shape_mismatch, "encoding inputs differ from task inputs");
  double loss = 0.0;
  for (int m = 0; m < enc.n_messages; ++m)
    for (int y = 0; y < t.n_y; ++y) {
      double g0 = 0.0, g1 = 0.0;
      for (int x = 0; x < t.n_x; ++x) {
        g0 += t.c(x, y, 0) * enc.probs(m, x);
        g1 += t.c(x, y, 1) * enc.probs(m, x);
      }
      loss += std::min(g0, g1);
    }
  return 1.0 - loss;
}

// Number of deterministic decoding functions y -> z; this is the canonical
// message alphabet for the frontier LP.  Capped at 1e5.
inline long long canonical_message_count(const TaskSpec& t) {
  long long r = 1;
  for (int y = 0; y < t.n_y; ++y) {
    r *= t.n_z;
    if (r > 100000)
      fail(errc::overflow, "canonical message space D^M exceeds 1e5");
  }
  return r;
}

struct FrontierPoint {
  double dist_cap = 0.0;      // distinguishability of the witness (<= requested cap)
  double best_success = 0.0;  // success achieved by the witness
  Encoding encoding;
  Eigen::MatrixXi decoding;   // optimal decoding table for the witness encoding
};

namespace detail {

struct FrontierWork {
  long long R = 0;
  Eigen::MatrixXi dec;    // (message, y) -> z, canonical enumeration
  Eigen::MatrixXd score;  // (message, x): sum_y c(x, y, dec(m, y))
};

inline FrontierWork frontier_setup(const TaskSpec& t) {
  FrontierWork w;
  w.R = canonical_message_count(t);
  w.dec.resize(w.R, t.n_y);
  for (long long m = 0; m < w.R; ++m) {
    long long mm = m;
    for (int y = 0; y < t.n_y; ++y) {
      w.dec(m, y) = static_cast<int>(mm % t.n_z);
      mm /= t.n_z;
    }
  }
  w.score.resize(w.R, t.n_x);
  for (long long m = 0; m < w.R; ++m)
    for (int x = 0; x < t.n_x; ++x) {
      double s = 0.0;
      for (int y = 0; y < t.n_y; ++y) s += t.c(x, y, w.dec(m, y));
      w.score(m, x) = s;
    }
  return w;
}

// One LP serves both frontier directions.  Variables: p_e(m,x), t_m (the
// per-message distinguishability contribution), epigraph slacks, and one
// slack for the coupling row.
inline FrontierPoint frontier_solve(const TaskSpec& t, double value, bool max_success) {
  FrontierWork w = frontier_setup(t);
  const int R = static_cast<int>(w.R);
  const int N = t.n_x;
  const int pe0 = 0, t0 = R * N, s0 = R * N + R, extra = 2 * R * N + R;
  auto pe_at = [&](int m, int x) { return pe0 + m * N + x; };
  auto s_at = [&](int m, int x) { return s0 + m * N + x; };

  conic::Problem prob;
  for (int i = 0; i <= extra; ++i) prob.add_block(1);
  if (max_success) {
    for (int m = 0; m < R; ++m)
      for (int x = 0; x < N; ++x)
        prob.add_objective(pe_at(m, x), 0, 0, -w.score(m, x));
  } else {
    for (int m = 0; m < R; ++m) prob.add_objective(t0 + m, 0, 0, 1.0);
  }
  for (int x = 0; x < N; ++x) {
    int row = prob.add_constraint(1.0);
    for (int m = 0; m < R; ++m) prob.add_coefficient(row, pe_at(m, x), 0, 0, 1.0);
  }
  for (int m = 0; m < R; ++m)
    for (int x = 0; x < N; ++x) {
      int row = prob.add_constraint(0.0);  // t_m - p_x pe(m,x) - s(m,x) = 0
      prob.add_coefficient(row, t0 + m, 0, 0, 1.0);
      prob.add_coefficient(row, pe_at(m, x), 0, 0, -t.prior(x));
      prob.add_coefficient(row, s_at(m, x), 0, 0, -1.0);
    }
  {
    int row = prob.add_constraint(value);
    if (max_success) {  // sum_m t_m + u = p
      for (int m = 0; m < R; ++m) prob.add_coefficient(row, t0 + m, 0, 0, 1.0);
      prob.add_coefficient(row, extra, 0, 0, 1.0);
    } else {  // sum score * pe - u = S_target
      for (int m = 0; m < R; ++m)
        for (int x = 0; x < N; ++x)
          if (w.score(m, x) != 0.0)
            prob.add_coefficient(row, pe_at(m, x), 0, 0, w.score(m, x));
      prob.add_coefficient(row, extra, 0, 0, -1.0);
    }
  }

  conic::Solution sol = prob.solve();
  if (sol.status == conic::SolveStatus::primal_infeasible) {
    fail(errc::infeasible, max_success
                               ? "no encoding meets the distinguishability cap"
                               : "requested success is classically unattainable");
  }
  if (sol.status != conic::SolveStatus::optimal)
    fail(errc::solver_failure, "frontier LP did not converge");

  Eigen::MatrixXd pe(R, N);
  for (int m = 0; m < R; ++m)
    for (int x = 0; x < N; ++x)
      pe(m, x) = std::max(sol.x_blocks[pe_at(m, x)](0, 0).real(), 0.0);
  for (int x = 0; x < N; ++x) {
    double colsum = pe.col(x).sum();
    if (colsum < 0.5) fail(errc::solver_failure, "frontier LP returned a degenerate encoding");
    pe.col(x) /= colsum;
  }
  Encoding enc{R, N, pe};
  ClassicalSuccess cs = classical_success_given_encoding(t, enc);
  double dval = classical_distinguishability(enc, t.prior);
  FrontierPoint fp;
  fp.encoding = std::move(enc);
  fp.decoding = std::move(cs.decoding);
  fp.best_success = cs.value;
  fp.dist_cap = std::max(dval, max_success ? value : sol.primal_objective);
  return fp;
}

}  // namespace detail

// Largest task success over encodings with distinguishability at most p.
inline FrontierPoint classical_frontier(const TaskSpec& t, double p) {
  if (p < 1.0 / t.n_x - 1e-9)
    fail(errc::infeasible, "every encoding has distinguishability at least 1/N");
  if (p > 1.0 + 1e-9) fail(errc::invalid_argument, "distinguishability cap exceeds 1");
  return detail::frontier_solve(t, std::min(std::max(p, 1.0 / t.n_x), 1.0), true);
}

// Smallest distinguishability of an encoding achieving success at least S.
inline FrontierPoint classical_frontier_min_p(const TaskSpec& t, double S) {
  if (S > 1.0 + 1e-9) fail(errc::invalid_argument, "success target exceeds 1");
  return detail::frontier_solve(t, std::min(S, 1.0), false);
}

// ------------------------------------------- closed-form lower bounds ------
// Each maps an achieved success S to the least classical distinguishability
// any strategy with that success must exhibit (clamped at 0).

inline double rac_bound(int n, double S) {
  if (n < 1) fail(errc::invalid_argument, "rac_bound needs n >= 1");
  return std::max(n * S + 1.0 - n, 0.0);
}

inline double graph_bound(const Graph& g, double S) {
  int alpha = independence_number(g);
  double sumdeg = 2.0 * g.num_edges();
  double v = ((sumdeg + g.n) * (S - 1.0) + g.n) /
             (static_cast<double>(g.n) * static_cast<double>(alpha));
  return std::max(v, 0.0);
}

inline double pairdist_bound(int N, double S) {
  if (N < 2) fail(errc::invalid_argument, "pairdist_bound needs N >= 2");
  return std::max((N - 1.0) * (S - 1.0) + 1.0, 0.0);
}

// ------------------------------- dimension-bounded classical success ------

enum class TaskFamily { pairdist, cycle, rac2 };

// Catalog of best known classical success values under a communication
// dimension budget d_C.  `n` is N for pairdist/cycle and the base d for rac2.
inline double dim_bounded_success(TaskFamily family, int n, int d_c) {
  switch (family) {
    case TaskFamily::pairdist: {
      if (n < 2) fail(errc::invalid_argument, "pairdist needs N >= 2");
      if (d_c != 2)
        fail(errc::unsupported_family, "pairdist catalog value covers d_C = 2 only");
      return 0.5 - 2.0 * (n - n / 2 - 1) / (static_cast<double>(n) * (n - 1));
    }
    case TaskFamily::cycle: {
      if (n < 3) fail(errc::invalid_argument, "cycle needs N >= 3");
      if (n % 2 == 0) fail(errc::even_n, "cycle catalog value covers odd N only");
      if (d_c != 2)
        fail(errc::unsupported_family, "cycle catalog value covers d_C = 2 only");
      return 1.0 - 2.0 / (3.0 * n);
    }
    case TaskFamily::rac2: {
      if (n < 2) fail(errc::invalid_argument, "rac2 needs d >= 2");
      if (d_c < 1 || d_c > n * n)
        fail(errc::unsupported_family, "rac2 catalog value needs 1 <= d_C <= d^2");
      return 0.5 * (1.0 + static_cast<double>(d_c) / (static_cast<double>(n) * n));
    }
  }
  fail(errc::unsupported_family, "unknown task family");
}

}  // namespace distcc
