#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// runner.  Each suite draws seeded random instances, checks one structural
// property of the library, and reports the first violation verbatim so a
// failure can be replayed.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "distcc/classical.hpp"
#include "distcc/graph.hpp"
#include "distcc/quantum.hpp"
#include "distcc/seesaw.hpp"
#include "distcc/task.hpp"

namespace distcc::props {

struct SuiteReport {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string detail;  // description of the first failing instance
  bool ok() const { return failures == 0 && instances > 0; }
};

namespace detail {

inline void flag(SuiteReport& r, const std::string& what) {
  if (r.failures == 0) r.detail = what;
  ++r.failures;
}

inline TaskSpec random_task(std::mt19937_64& rng, int max_x, int max_y, int max_z) {
  std::uniform_int_distribution<int> dx(2, max_x), dy(1, max_y), dz(2, max_z);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int nx = dx(rng), ny = dy(rng), nz = dz(rng);
  std::vector<double> c(static_cast<std::size_t>(nx) * ny * nz);
  for (double& v : c) v = unif(rng) < 0.25 ? 0.0 : unif(rng);
  if (std::accumulate(c.begin(), c.end(), 0.0) <= 0.0) c[0] = 1.0;
  return make_task(nx, ny, nz, std::move(c), true);
}

inline Behavior random_behavior(const TaskSpec& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> p(t.coeffs.size());
  for (int x = 0; x < t.n_x; ++x)
    for (int y = 0; y < t.n_y; ++y) {
      double total = 0.0;
      for (int z = 0; z < t.n_z; ++z) {
        double v = unif(rng) + 1e-3;
        p[(static_cast<std::size_t>(x) * t.n_y + y) * t.n_z + z] = v;
        total += v;
      }
      for (int z = 0; z < t.n_z; ++z)
        p[(static_cast<std::size_t>(x) * t.n_y + y) * t.n_z + z] /= total;
    }
  return make_behavior(t.n_x, t.n_y, t.n_z, std::move(p));
}

inline std::vector<Eigen::MatrixXcd> random_densities(int n, int dim,
                                                      std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd a = distcc::detail::random_ginibre(dim, rng);
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    out.push_back(std::move(rho));
  }
  return out;
}

}  // namespace detail

// 1. Task builders and make_task keep the coefficient tensor normalized:
//    nonnegative entries, total mass 1, and perfect-knowledge success at
//    most 1 (exactly 1 for the named families).
inline SuiteReport task_normalization_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"task normalization"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> family(0, 3);
  for (int i = 0; i < instances; ++i, ++r.instances) {
    TaskSpec t;
    bool named = true;
    switch (family(rng)) {
      case 0: t = rac_task(2 + static_cast<int>(rng() % 2), 2 + static_cast<int>(rng() % 2)); break;
      case 1: t = pair_distinguishability_task(3 + static_cast<int>(rng() % 4)); break;
      case 2: t = graph_equality_task(cycle_graph(3 + static_cast<int>(rng() % 5))); break;
      default: t = detail::random_task(rng, 4, 3, 3); named = false; break;
    }
    double mass = std::accumulate(t.coeffs.begin(), t.coeffs.end(), 0.0);
    double perfect = 0.0;
    double min_c = 0.0;
    for (int x = 0; x < t.n_x; ++x)
      for (int y = 0; y < t.n_y; ++y) {
        double best = 0.0;
        for (int z = 0; z < t.n_z; ++z) {
          best = std::max(best, t.c(x, y, z));
          min_c = std::min(min_c, t.c(x, y, z));
        }
        perfect += best;
      }
    bool bad = std::abs(mass - 1.0) > 1e-12 || min_c < 0.0 ||
               perfect > 1.0 + 1e-12 ||
               std::abs(t.prior.sum() - 1.0) > 1e-12 ||
               (named && std::abs(perfect - 1.0) > 1e-12);
    if (bad) {
      std::ostringstream ss;
      ss << t.label << ": mass=" << mass << " perfect=" << perfect
         << " min_c=" << min_c;
      detail::flag(r, ss.str());
    }
    bool threw = false;
    try {
      std::vector<double> c(static_cast<std::size_t>(t.n_x) * t.n_y * t.n_z, 1.0);
      c[i % c.size()] = -1e-6;
      make_task(t.n_x, t.n_y, t.n_z, std::move(c), true);
    } catch (const Error& e) {
      threw = e.code() == errc::negative_coefficient;
    }
    if (!threw) detail::flag(r, "negative coefficient accepted");
  }
  return r;
}

// 2. The success metric is linear in the behavior.
inline SuiteReport behavior_linearity_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"behavior linearity"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < instances; ++i, ++r.instances) {
    TaskSpec t = detail::random_task(rng, 4, 3, 3);
    Behavior a = detail::random_behavior(t, rng);
    Behavior b = detail::random_behavior(t, rng);
    double lam = unif(rng);
    Behavior mix = a;
    for (std::size_t k = 0; k < mix.probs.size(); ++k)
      mix.probs[k] = lam * a.probs[k] + (1.0 - lam) * b.probs[k];
    double lhs = evaluate_success(t, mix);
    double rhs = lam * evaluate_success(t, a) + (1.0 - lam) * evaluate_success(t, b);
    if (std::abs(lhs - rhs) > 1e-12) {
      std::ostringstream ss;
      ss << "lambda=" << lam << " lhs=" << lhs << " rhs=" << rhs;
      detail::flag(r, ss.str());
    }
  }
  return r;
}

// 3. Frontier witnesses are genuine encodings: column-stochastic message
//    distributions whose recomputed distinguishability stays within the cap.
inline SuiteReport encoding_stochasticity_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"encoding stochasticity"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < instances; ++i, ++r.instances) {
    TaskSpec t = detail::random_task(rng, 3, 3, 2);
    double p = 1.0 / t.n_x + (1.0 - 1.0 / t.n_x) * unif(rng);
    FrontierPoint fp = classical_frontier(t, p);
    const Encoding& enc = fp.encoding;
    double worst_col = 0.0, min_entry = 0.0;
    for (int x = 0; x < enc.n_inputs; ++x) {
      double colsum = 0.0;
      for (int m = 0; m < enc.n_messages; ++m) {
        colsum += enc.probs(m, x);
        min_entry = std::min(min_entry, enc.probs(m, x));
      }
      worst_col = std::max(worst_col, std::abs(colsum - 1.0));
    }
    double d = classical_distinguishability(enc, t.prior);
    if (worst_col > 1e-9 || min_entry < -1e-12 || d > p + 1e-6) {
      std::ostringstream ss;
      ss << "cap=" << p << " colsum err=" << worst_col << " min=" << min_entry
         << " dist=" << d;
      detail::flag(r, ss.str());
    }
  }
  return r;
}

// 4. Randomly generated POVMs are complete and positive semidefinite.
inline SuiteReport povm_completeness_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"povm completeness"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < instances; ++i, ++r.instances) {
    int dim = 2 + static_cast<int>(rng() % 3);
    int outcomes = 2 + static_cast<int>(rng() % 3);
    auto povm = distcc::detail::random_povm(dim, outcomes, rng);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    double min_eig = 0.0, herm_err = 0.0;
    for (const auto& m : povm) {
      sum += m;
      herm_err = std::max(herm_err, (m - m.adjoint()).norm());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    double comp_err = (sum - Eigen::MatrixXcd::Identity(dim, dim)).norm();
    if (comp_err > 1e-9 || min_eig < -1e-9 || herm_err > 1e-12 ||
        static_cast<int>(povm.size()) != outcomes) {
      std::ostringstream ss;
      ss << "dim=" << dim << " outcomes=" << outcomes << " completeness err="
         << comp_err << " min eig=" << min_eig;
      detail::flag(r, ss.str());
    }
  }
  return r;
}

// 5. Distinguishability of N states in dimension d never exceeds d/N (and
//    never falls below 1/N) under the uniform prior.
inline SuiteReport observation1_cap_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"dimension cap on distinguishability"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < instances; ++i, ++r.instances) {
    int n = 3 + static_cast<int>(rng() % 4);
    int dim = 2 + static_cast<int>(rng() % std::max(1, std::min(2, n - 2)));
    auto states = detail::random_densities(n, dim, rng);
    double d = quantum_distinguishability(states, Eigen::VectorXd::Constant(n, 1.0 / n));
    double cap = std::min(1.0, static_cast<double>(dim) / n);
    if (d > cap + 1e-6 || d < 1.0 / n - 1e-9) {
      std::ostringstream ss;
      ss << "n=" << n << " dim=" << dim << " D=" << d << " cap=" << cap;
      detail::flag(r, ss.str());
    }
  }
  return r;
}

// 6. The classical frontier S*(p) is concave in the distinguishability cap.
inline SuiteReport frontier_concavity_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"frontier concavity"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < instances; ++i, ++r.instances) {
    TaskSpec t = detail::random_task(rng, 3, 3, 2);
    double lo = 1.0 / t.n_x;
    double p1 = lo + (1.0 - lo) * unif(rng);
    double p3 = lo + (1.0 - lo) * unif(rng);
    if (p1 > p3) std::swap(p1, p3);
    double lam = unif(rng);
    double p2 = lam * p1 + (1.0 - lam) * p3;
    double s1 = classical_frontier(t, p1).best_success;
    double s2 = classical_frontier(t, p2).best_success;
    double s3 = classical_frontier(t, p3).best_success;
    if (s2 < lam * s1 + (1.0 - lam) * s3 - 1e-6) {
      std::ostringstream ss;
      ss << "p=(" << p1 << "," << p2 << "," << p3 << ") S=(" << s1 << "," << s2
         << "," << s3 << ") lambda=" << lam;
      detail::flag(r, ss.str());
    }
  }
  return r;
}

// 7. See-saw iterates never decrease the success across rounds.
inline SuiteReport seesaw_monotone_suite(int instances, std::uint64_t seed) {
  SuiteReport r{"see-saw monotone iterates"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // only instances whose solve completed count toward the quota
  for (int attempt = 0; r.instances < instances && attempt < 2 * instances;
       ++attempt) {
    TaskSpec t = detail::random_task(rng, 3, 2, 2);
    double lo = 1.0 / t.n_x;
    double cap = lo + (1.0 - lo) * (0.1 + 0.9 * unif(rng));
    SeesawOptions o;
    o.restarts = 1;
    o.max_rounds = 6;
    o.tol = 1e-9;
    o.seed = rng();
    SeesawResult res;
    try {
      res = seesaw_max_success(t, 2, cap, o);
    } catch (const Error&) {
      continue;  // a solver hiccup on a random instance is not a violation
    }
    ++r.instances;
    for (std::size_t k = 0; k + 1 < res.trajectory.size(); ++k)
      if (res.trajectory[k + 1] < res.trajectory[k] - 1e-6) {
        std::ostringstream ss;
        ss << "cap=" << cap << " round " << k << ": " << res.trajectory[k]
           << " -> " << res.trajectory[k + 1];
        detail::flag(r, ss.str());
        break;
      }
  }
  return r;
}

inline std::vector<SuiteReport> run_all_suites(int instances, std::uint64_t seed) {
  return {task_normalization_suite(instances, seed + 1),
          behavior_linearity_suite(instances, seed + 2),
          encoding_stochasticity_suite(instances, seed + 3),
          povm_completeness_suite(instances, seed + 4),
          observation1_cap_suite(instances, seed + 5),
          frontier_concavity_suite(instances, seed + 6),
          seesaw_monotone_suite(instances, seed + 7)};
}

}  // namespace distcc::props
