#pragma once

// Finite one-way communication tasks. The sender holds x in {0..N-1} drawn
// from a prior; the receiver holds y in {0..M-1} and outputs z in {0..D-1}.
// Nonnegative coefficients c(x,y,z) sum to one, so the success
//   S = sum_{x,y,z} c(x,y,z) p(z|x,y)
// of any behavior p(z|x,y) lies in [0,1]. Indices are 0-based in memory;
// JSON serialization uses 1-based indices.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "distcc/errors.hpp"

namespace distcc {

struct TaskSpec {
  std::string label;
  int n_x = 0;  // N, sender inputs
  int n_y = 0;  // M, receiver inputs
  int n_z = 0;  // D, outputs
  Eigen::VectorXd prior;       // p_x; builders always set the uniform prior
  std::vector<double> coeffs;  // dense c(x,y,z), index (x*n_y + y)*n_z + z

  int idx(int x, int y, int z) const { return (x * n_y + y) * n_z + z; }
  double c(int x, int y, int z) const { return coeffs[idx(x, y, z)]; }
  double& c(int x, int y, int z) { return coeffs[idx(x, y, z)]; }
};

// Conditional outcome distributions p(z|x,y), laid out like TaskSpec::coeffs.
struct Behavior {
  int n_x = 0, n_y = 0, n_z = 0;
  std::vector<double> probs;

  int idx(int x, int y, int z) const { return (x * n_y + y) * n_z + z; }
  double p(int x, int y, int z) const { return probs[idx(x, y, z)]; }
  double& p(int x, int y, int z) { return probs[idx(x, y, z)]; }
};

inline Behavior make_behavior(int n_x, int n_y, int n_z, std::vector<double> probs) {
  if (n_x < 1 || n_y < 1 || n_z < 1)
    fail(errc::invalid_argument, "alphabet sizes must be positive");
  if (probs.size() != static_cast<std::size_t>(n_x) * n_y * n_z)
    fail(errc::shape_mismatch, "behavior tensor has wrong size");
  for (int x = 0; x < n_x; ++x)
    for (int y = 0; y < n_y; ++y) {
      double total = 0.0;
      for (int z = 0; z < n_z; ++z) {
        double v = probs[(static_cast<std::size_t>(x) * n_y + y) * n_z + z];
        if (v < -1e-12) fail(errc::invalid_argument, "negative probability in behavior");
        total += v;
      }
      if (std::abs(total - 1.0) > 1e-9)
        fail(errc::not_normalized, "behavior slice does not sum to 1");
    }
  return Behavior{n_x, n_y, n_z, std::move(probs)};
}

inline TaskSpec make_task(int N, int M, int D, std::vector<double> coeffs,
                          bool renormalize = false, std::string label = "custom") {
  if (N < 1 || M < 1 || D < 1)
    fail(errc::invalid_argument, "alphabet sizes must be positive");
  if (coeffs.size() != static_cast<std::size_t>(N) * M * D)
    fail(errc::shape_mismatch, "coefficient tensor has wrong size");
  double total = 0.0;
  for (double v : coeffs) {
    if (v < 0.0) fail(errc::negative_coefficient, "coefficients must be nonnegative");
    total += v;
  }
  if (renormalize) {
    if (total <= 0.0) fail(errc::not_normalized, "total coefficient mass is zero");
    for (double& v : coeffs) v /= total;
  } else if (std::abs(total - 1.0) > 1e-9) {
    fail(errc::not_normalized, "coefficients must sum to 1 (or pass renormalize)");
  }
  TaskSpec t;
  t.label = std::move(label);
  t.n_x = N;
  t.n_y = M;
  t.n_z = D;
  t.prior = Eigen::VectorXd::Constant(N, 1.0 / N);
  t.coeffs = std::move(coeffs);
  return t;
}

// Digit y (0-based from the most significant end) of x written as an n-digit
// big-endian base-d string.
inline int rac_digit(int x, int y, int n, int d) {
  int p = 1;
  for (int k = 0; k < n - 1 - y; ++k) p *= d;
  return (x / p) % d;
}

// Random access code: Alice holds an n-dit string, Bob must output dit y.
inline TaskSpec rac_task(int n, int d) {
  if (n < 1) fail(errc::invalid_argument, "rac_task needs n >= 1");
  if (d < 2) fail(errc::invalid_argument, "rac_task needs d >= 2");
  long long N = 1;
  for (int k = 0; k < n; ++k) {
    N *= d;
    if (N > 1000000) fail(errc::overflow, "rac_task refuses d^n > 1e6");
  }
  TaskSpec t;
  t.label = "rac(" + std::to_string(n) + "," + std::to_string(d) + ")";
  t.n_x = static_cast<int>(N);
  t.n_y = n;
  t.n_z = d;
  t.prior = Eigen::VectorXd::Constant(t.n_x, 1.0 / t.n_x);
  t.coeffs.assign(static_cast<std::size_t>(t.n_x) * n * d, 0.0);
  double w = 1.0 / (static_cast<double>(n) * N);
  for (int x = 0; x < t.n_x; ++x)
    for (int y = 0; y < n; ++y) t.c(x, y, rac_digit(x, y, n, d)) = w;
  return t;
}

// Pair-distinguishability task: the receiver gets an unordered pair {x,x'}
// containing Alice's input and must name it. Pairs are indexed
// lexicographically by (x, x') with x < x'.
inline TaskSpec pair_distinguishability_task(int N) {
  if (N < 2) fail(errc::invalid_argument, "pair task needs N >= 2");
  TaskSpec t;
  t.label = "pairdist(" + std::to_string(N) + ")";
  t.n_x = N;
  t.n_y = N * (N - 1) / 2;
  t.n_z = N;
  t.prior = Eigen::VectorXd::Constant(N, 1.0 / N);
  t.coeffs.assign(static_cast<std::size_t>(N) * t.n_y * N, 0.0);
  double w = 1.0 / (static_cast<double>(N) * (N - 1));
  int pair = 0;
  for (int x = 0; x < N; ++x)
    for (int xp = x + 1; xp < N; ++xp, ++pair) {
      t.c(x, pair, x) = w;
      t.c(xp, pair, xp) = w;
    }
  return t;
}

// Index of the unordered pair (x, x') with x < x' in lexicographic order.
inline int pair_index(int N, int x, int xp) {
  if (x > xp) std::swap(x, xp);
  return x * N - x * (x + 1) / 2 + (xp - x - 1);
}

inline double evaluate_success(const TaskSpec& t, const Behavior& b) {
  if (t.n_x != b.n_x || t.n_y != b.n_y || t.n_z != b.n_z)
    fail(errc::shape_mismatch, "task and behavior shapes differ");
  return std::inner_product(t.coeffs.begin(), t.coeffs.end(), b.probs.begin(), 0.0);
}

// ------------------------------------------------------------- JSON ------

inline nlohmann::json task_to_json(const TaskSpec& t) {
  nlohmann::json j;
  j["label"] = t.label;
  j["N"] = t.n_x;
  j["M"] = t.n_y;
  j["D"] = t.n_z;
  j["prior"] = std::vector<double>(t.prior.data(), t.prior.data() + t.prior.size());
  nlohmann::json entries = nlohmann::json::array();
  for (int x = 0; x < t.n_x; ++x)
    for (int y = 0; y < t.n_y; ++y)
      for (int z = 0; z < t.n_z; ++z)
        if (t.c(x, y, z) != 0.0)
          entries.push_back({x + 1, y + 1, z + 1, t.c(x, y, z)});
  j["coeffs"] = std::move(entries);
  return j;
}

inline TaskSpec task_from_json(const nlohmann::json& j) {
  int N = j.at("N").get<int>();
  int M = j.at("M").get<int>();
  int D = j.at("D").get<int>();
  if (N < 1 || M < 1 || D < 1)
    fail(errc::invalid_argument, "alphabet sizes must be positive");
  std::vector<double> coeffs(static_cast<std::size_t>(N) * M * D, 0.0);
  for (const auto& e : j.at("coeffs")) {
    int x = e.at(0).get<int>() - 1;
    int y = e.at(1).get<int>() - 1;
    int z = e.at(2).get<int>() - 1;
    if (x < 0 || x >= N || y < 0 || y >= M || z < 0 || z >= D)
      fail(errc::shape_mismatch, "coefficient index out of range");
    coeffs[(static_cast<std::size_t>(x) * M + y) * D + z] = e.at(3).get<double>();
  }
  TaskSpec t = make_task(N, M, D, std::move(coeffs), false,
                         j.value("label", std::string("custom")));
  if (j.contains("prior")) {
    auto pv = j.at("prior").get<std::vector<double>>();
    if (static_cast<int>(pv.size()) != N)
      fail(errc::shape_mismatch, "prior length must equal N");
    double total = 0.0;
    for (double v : pv) {
      if (v < 0.0) fail(errc::invalid_argument, "negative prior entry");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-12)
      fail(errc::not_normalized, "prior must sum to 1");
    t.prior = Eigen::Map<const Eigen::VectorXd>(pv.data(), N);
  }
  return t;
}

}  // namespace distcc
