#pragma once

// Quantum one-way strategies: Born-rule success, the distinguishability SDP,
// Helstrom pair success, and the explicit state/measurement families used by
// the experiments (MUB random-access codes, noisy qubit codes, N-gon and
// sign-vector equality strategies, pair-discrimination states).

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "distcc/conic.hpp"
#include "distcc/errors.hpp"
#include "distcc/graph.hpp"
#include "distcc/task.hpp"

namespace distcc {

struct QuantumStrategy {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> states;                     // one density matrix per x
  std::vector<std::vector<Eigen::MatrixXcd>> measurements;  // [y][z]
};

struct PureStateFamily {
  int dim = 0;
  std::vector<Eigen::VectorXcd> kets;
};

// Global phase convention: first amplitude above 1e-12 is made real positive.
inline Eigen::VectorXcd fix_phase(Eigen::VectorXcd v) {
  for (int i = 0; i < v.size(); ++i) {
    double a = std::abs(v(i));
    if (a > 1e-12) {
      v *= std::conj(v(i)) / a;
      break;
    }
  }
  return v;
}

inline Eigen::MatrixXcd ket_to_density(const Eigen::VectorXcd& k) {
  return k * k.adjoint();
}

inline void validate_state(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) fail(errc::invalid_state, "state matrix not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    fail(errc::invalid_state, "state matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    fail(errc::invalid_state, "state matrix not unit trace");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    fail(errc::invalid_state, "state matrix has a negative eigenvalue");
}

inline void validate_povm(const std::vector<Eigen::MatrixXcd>& ops, int dim) {
  if (ops.empty()) fail(errc::invalid_measurement, "empty POVM");
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& m : ops) {
    if (m.rows() != dim || m.cols() != dim)
      fail(errc::dimension_mismatch, "POVM element dimension mismatch");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      fail(errc::invalid_measurement, "POVM element not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
      fail(errc::invalid_measurement, "POVM element has a negative eigenvalue");
    total += m;
  }
  if ((total - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-9)
    fail(errc::invalid_measurement, "POVM does not sum to the identity");
}

inline void validate_strategy(const QuantumStrategy& s) {
  if (s.dim < 1) fail(errc::invalid_state, "strategy dimension must be positive");
  for (const auto& rho : s.states) {
    if (rho.rows() != s.dim)
      fail(errc::dimension_mismatch, "state dimension differs from strategy dim");
    validate_state(rho);
  }
  for (const auto& povm : s.measurements) validate_povm(povm, s.dim);
}

// S = sum_{x,y,z} c(x,y,z) tr(rho_x M_{z|y}).
inline double quantum_success(const TaskSpec& t, const QuantumStrategy& s) {
  if (static_cast<int>(s.states.size()) != t.n_x ||
      static_cast<int>(s.measurements.size()) != t.n_y)
    fail(errc::shape_mismatch, "strategy alphabet sizes differ from task");
  for (const auto& povm : s.measurements)
    if (static_cast<int>(povm.size()) != t.n_z)
      fail(errc::shape_mismatch, "POVM outcome count differs from task");
  validate_strategy(s);
  double total = 0.0;
  for (int x = 0; x < t.n_x; ++x)
    for (int y = 0; y < t.n_y; ++y)
      for (int z = 0; z < t.n_z; ++z) {
        double w = t.c(x, y, z);
        if (w != 0.0)
          total += w * (s.states[x] * s.measurements[y][z]).trace().real();
      }
  return total;
}

// Observation-style dimension cap on the distinguishability of N states in
// dimension d (uniform prior): D_Q <= d/N, clamped at 1.
inline double distinguishability_dimension_cap(int dim, int N) {
  if (dim < 1 || N < 1) fail(errc::invalid_argument, "dimension and N must be positive");
  return std::min(1.0, static_cast<double>(dim) / N);
}

// Max_{POVM} sum_x p_x tr(rho_x M_x) with sum_x M_x = I.
inline double quantum_distinguishability(const std::vector<Eigen::MatrixXcd>& states,
                                         const Eigen::VectorXd& prior) {
  const int N = static_cast<int>(states.size());
  if (N < 1) fail(errc::invalid_argument, "need at least one state");
  if (prior.size() != N) fail(errc::shape_mismatch, "prior length differs from state count");
  const int d = static_cast<int>(states[0].rows());
  for (const auto& rho : states) {
    if (rho.rows() != d) fail(errc::dimension_mismatch, "states have mixed dimensions");
    validate_state(rho);
  }
  double total_prior = 0.0;
  for (int x = 0; x < N; ++x) {
    if (prior(x) < 0.0) fail(errc::invalid_argument, "negative prior entry");
    total_prior += prior(x);
  }
  if (std::abs(total_prior - 1.0) > 1e-9)
    fail(errc::not_normalized, "prior must sum to 1");

  conic::Problem prob;
  for (int x = 0; x < N; ++x) prob.add_block(d);
  for (int x = 0; x < N; ++x)
    for (int r = 0; r < d; ++r)
      for (int c = r; c < d; ++c) {
        std::complex<double> v = prior(x) * states[x](r, c);
        if (std::abs(v) > 0.0) prob.add_objective(x, r, c, -v);
      }
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c) {
      int row_re = prob.add_constraint(r == c ? 1.0 : 0.0);
      for (int x = 0; x < N; ++x)
        prob.add_coefficient(row_re, x, r, c, r == c ? 1.0 : 0.5);
      if (r < c) {
        int row_im = prob.add_constraint(0.0);
        for (int x = 0; x < N; ++x)
          prob.add_coefficient(row_im, x, r, c, std::complex<double>(0.0, 0.5));
      }
    }
  conic::Solution sol = prob.solve();
  if (sol.status != conic::SolveStatus::optimal)
    fail(errc::solver_failure, "distinguishability SDP did not converge");
  return -sol.primal_objective;
}

// 1/2 + (1/(2N(N-1))) sum_{x<x'} ||rho_x - rho_x'||_tr: the success of the
// pair task when every pair is discriminated by its own Helstrom measurement.
inline double helstrom_pair_success(const std::vector<Eigen::MatrixXcd>& states) {
  const int N = static_cast<int>(states.size());
  if (N < 2) fail(errc::invalid_argument, "need at least two states");
  const int d = static_cast<int>(states[0].rows());
  for (const auto& rho : states) {
    if (rho.rows() != d) fail(errc::dimension_mismatch, "states have mixed dimensions");
    validate_state(rho);
  }
  double total = 0.0;
  for (int x = 0; x < N; ++x)
    for (int xp = x + 1; xp < N; ++xp) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(states[x] - states[xp],
                                                         Eigen::EigenvaluesOnly);
      total += es.eigenvalues().cwiseAbs().sum();
    }
  return 0.5 + total / (2.0 * N * (N - 1));
}

// ------------------------------------------------ explicit families ------

// Two mutually unbiased bases (computational and Fourier) decode the two
// digits of a base-d string; the sender transmits the top eigenvector of the
// average of the two target projectors.
inline QuantumStrategy rac_mub_strategy(int d) {
  if (d < 2) fail(errc::invalid_argument, "rac_mub_strategy needs d >= 2");
  const std::complex<double> i2pi(0.0, 2.0 * std::acos(-1.0) / d);
  std::vector<Eigen::VectorXcd> fourier(d);
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXcd f(d);
    for (int j = 0; j < d; ++j)
      f(j) = std::exp(i2pi * static_cast<double>(j * k)) / std::sqrt(static_cast<double>(d));
    fourier[k] = fix_phase(f);
  }
  QuantumStrategy s;
  s.dim = d;
  s.measurements.resize(2);
  for (int z = 0; z < d; ++z) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e(z) = 1.0;
    s.measurements[0].push_back(ket_to_density(e));
    s.measurements[1].push_back(ket_to_density(fourier[z]));
  }
  for (int x1 = 0; x1 < d; ++x1)
    for (int x2 = 0; x2 < d; ++x2) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
      e(x1) = 1.0;
      Eigen::MatrixXcd avg = 0.5 * (ket_to_density(e) + ket_to_density(fourier[x2]));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(avg);
      int top = d - 1;  // eigenvalues ascending
      if (d >= 2 && es.eigenvalues()(top) - es.eigenvalues()(top - 1) < 1e-9)
        fail(errc::invalid_state, "degenerate top eigenvector in MUB construction");
      s.states.push_back(ket_to_density(fix_phase(es.eigenvectors().col(top))));
    }
  return s;
}

// Four qubit kets at angles pi/8, 3pi/8, 7pi/8, 5pi/8 (for x1x2 = 00,01,10,11)
// mixed with white noise of weight 1-p; the first digit is decoded in the
// {|+>,|->} basis and the second in the computational basis.
inline QuantumStrategy noisy_rac22_strategy(double p) {
  if (p < 0.0 || p > 1.0) fail(errc::invalid_argument, "p must lie in [0,1]");
  const double pi = std::acos(-1.0);
  auto real_ket = [](double theta) {
    Eigen::VectorXcd v(2);
    v << std::cos(theta), std::sin(theta);
    return v;
  };
  QuantumStrategy s;
  s.dim = 2;
  for (double theta : {pi / 8, 3 * pi / 8, 7 * pi / 8, 5 * pi / 8})
    s.states.push_back(p * ket_to_density(real_ket(theta)) +
                       (1.0 - p) * 0.5 * Eigen::MatrixXcd::Identity(2, 2));
  s.measurements.resize(2);
  s.measurements[0].push_back(ket_to_density(real_ket(pi / 4)));   // |+>
  s.measurements[0].push_back(ket_to_density(real_ket(3 * pi / 4)));  // |->
  s.measurements[1].push_back(ket_to_density(real_ket(0.0)));      // |0>
  s.measurements[1].push_back(ket_to_density(real_ket(pi / 2)));   // |1>
  return s;
}

// Regular N-gon strategy for the cycle equality task (odd N): qubit kets at
// angles x*beta/2 with beta = (N-1)pi/N; outcome "equal" projects onto the
// receiver's own ket.
inline QuantumStrategy ngon_strategy(int N) {
  if (N < 3) fail(errc::invalid_argument, "ngon_strategy needs N >= 3");
  if (N % 2 == 0) fail(errc::even_n, "ngon_strategy needs odd N");
  const double pi = std::acos(-1.0);
  const double beta = (N - 1) * pi / N;
  QuantumStrategy s;
  s.dim = 2;
  std::vector<Eigen::VectorXcd> kets(N);
  for (int x = 0; x < N; ++x) {
    Eigen::VectorXcd v(2);
    v << std::cos(x * beta / 2), std::sin(x * beta / 2);
    kets[x] = fix_phase(v);
    s.states.push_back(ket_to_density(kets[x]));
  }
  s.measurements.resize(N);
  for (int y = 0; y < N; ++y) {
    Eigen::MatrixXcd eq = ket_to_density(kets[y]);
    s.measurements[y].push_back(eq);
    s.measurements[y].push_back(Eigen::MatrixXcd::Identity(2, 2) - eq);
  }
  return s;
}

// Sign-vector kets (1/sqrt(d)) * ((-1)^{s_1}, ..., (-1)^{s_d}) for all 2^d
// sign strings, big-endian bit order.
inline PureStateFamily hadamard_kets(int d) {
  if (d < 2) fail(errc::invalid_argument, "hadamard_kets needs d >= 2");
  if (d % 2 != 0) fail(errc::odd_dimension, "hadamard_kets needs even d");
  if (d > 16)
    fail(errc::too_large, "explicit sign-vector families are capped at d = 16");
  PureStateFamily fam;
  fam.dim = d;
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  const int n = 1 << d;
  fam.kets.reserve(n);
  for (int x = 0; x < n; ++x) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = ((x >> (d - 1 - i)) & 1) ? -a : a;
    fam.kets.push_back(fix_phase(v));
  }
  return fam;
}

// Full strategy (states + projective equality measurements) for the
// sign-vector equality task.  Materializing 2^d states and 2^d POVMs is
// capped at d = 12; use hadamard_kets / the structural evaluators beyond.
inline QuantumStrategy hadamard_strategy(int d) {
  if (d % 2 != 0) fail(errc::odd_dimension, "hadamard_strategy needs even d");
  if (d > 12)
    fail(errc::too_large, "explicit hadamard_strategy is capped at d = 12");
  PureStateFamily fam = hadamard_kets(d);
  QuantumStrategy s;
  s.dim = d;
  const int n = 1 << d;
  s.states.reserve(n);
  s.measurements.resize(n);
  for (int x = 0; x < n; ++x) s.states.push_back(ket_to_density(fam.kets[x]));
  for (int y = 0; y < n; ++y) {
    Eigen::MatrixXcd eq = ket_to_density(fam.kets[y]);
    s.measurements[y].push_back(eq);
    s.measurements[y].push_back(Eigen::MatrixXcd::Identity(d, d) - eq);
  }
  return s;
}

// Qubit kets at angles x*pi/N for x = 1..N.
inline PureStateFamily pairdist_states(int N) {
  if (N < 2) fail(errc::invalid_argument, "pairdist_states needs N >= 2");
  const double pi = std::acos(-1.0);
  PureStateFamily fam;
  fam.dim = 2;
  for (int x = 1; x <= N; ++x) {
    Eigen::VectorXcd v(2);
    v << std::cos(x * pi / N), std::sin(x * pi / N);
    fam.kets.push_back(fix_phase(v));
  }
  return fam;
}

inline std::vector<Eigen::MatrixXcd> family_densities(const PureStateFamily& fam) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(fam.kets.size());
  for (const auto& k : fam.kets) out.push_back(ket_to_density(k));
  return out;
}

// Pad kets with zero amplitudes to live in a larger dimension.
inline PureStateFamily embed_family(const PureStateFamily& fam, int dim) {
  if (dim < fam.dim)
    fail(errc::dimension_mismatch, "embedding dimension below the family's own");
  PureStateFamily out;
  out.dim = dim;
  for (const auto& k : fam.kets) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v.head(fam.dim) = k;
    out.kets.push_back(v);
  }
  return out;
}

// Independent evaluation path for graph equality tasks played with ket
// projector measurements: S = 1 - w * sum over ordered adjacent pairs of
// |<psi_x|psi_y>|^2 with w = 1/(sum_x deg(x) + N).
inline double graph_task_success_from_kets(const Graph& g, const PureStateFamily& fam) {
  if (static_cast<int>(fam.kets.size()) != g.n)
    fail(errc::size_mismatch, "need one ket per vertex");
  for (const auto& k : fam.kets) {
    if (k.size() != fam.dim)
      fail(errc::dimension_mismatch, "ket dimension differs from declared dim");
    if (std::abs(k.norm() - 1.0) > 1e-10)
      fail(errc::invalid_state, "kets must be unit vectors");
  }
  double w = 1.0 / (2.0 * g.num_edges() + g.n);
  double crosstalk = 0.0;
  for (int x = 0; x < g.n; ++x)
    for (int y : g.neighbors[x]) crosstalk += std::norm(fam.kets[x].dot(fam.kets[y]));
  return 1.0 - w * crosstalk;
}

// ------------------------------------------------------------- JSON ------

namespace detail {

inline nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c).real());
      row.push_back(m(r, c).imag());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, int dim) {
  if (static_cast<int>(j.size()) != dim)
    fail(errc::shape_mismatch, "matrix row count differs from dimension");
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j.at(r);
    if (static_cast<int>(row.size()) != 2 * dim)
      fail(errc::shape_mismatch, "matrix row length differs from 2*dim");
    for (int c = 0; c < dim; ++c)
      m(r, c) = std::complex<double>(row.at(2 * c).get<double>(),
                                     row.at(2 * c + 1).get<double>());
  }
  return m;
}

}  // namespace detail

inline nlohmann::json strategy_to_json(const QuantumStrategy& s) {
  nlohmann::json j;
  j["dim"] = s.dim;
  j["N"] = static_cast<int>(s.states.size());
  j["M"] = static_cast<int>(s.measurements.size());
  j["D"] = s.measurements.empty() ? 0 : static_cast<int>(s.measurements[0].size());
  nlohmann::json st = nlohmann::json::array();
  for (const auto& rho : s.states) st.push_back(detail::matrix_to_json(rho));
  j["states"] = std::move(st);
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& povm : s.measurements) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& m : povm) ops.push_back(detail::matrix_to_json(m));
    ms.push_back(std::move(ops));
  }
  j["measurements"] = std::move(ms);
  return j;
}

inline QuantumStrategy strategy_from_json(const nlohmann::json& j) {
  QuantumStrategy s;
  s.dim = j.at("dim").get<int>();
  for (const auto& m : j.at("states"))
    s.states.push_back(detail::matrix_from_json(m, s.dim));
  for (const auto& povm : j.at("measurements")) {
    std::vector<Eigen::MatrixXcd> ops;
    for (const auto& m : povm) ops.push_back(detail::matrix_from_json(m, s.dim));
    s.measurements.push_back(std::move(ops));
  }
  validate_strategy(s);  // loaders reject invalid input
  return s;
}

}  // namespace distcc
