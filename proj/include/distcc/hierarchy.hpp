#pragma once

// Semidefinite hierarchy bounding the quantum success/distinguishability
// trade-off from above.
//
// A dimension-free quantum strategy is a family of states rho_x and
// measurements {M_{z|y}}.  Its distinguishability never exceeds p exactly
// when some Hermitian "hinge" Theta satisfies Theta >= rho_x for every x and
// (1/N) tr Theta <= p.  The relaxation at level L keeps, for every state and
// for the hinge, the moments of all operator words of length <= 2L in the
// measurement letters, organised into K x K moment matrices indexed by the
// reduced words of length <= L:
//
//   Gamma_x           >= 0   (moments against rho_x, (I, I) entry fixed to 1)
//   Gamma_T - Gamma_x >= 0   (moments against Theta - rho_x)
//   (1/N) * theta_tr  <= p   (theta_tr is the (I, I) entry of Gamma_T)
//
// together with one scalar constraint carrying either the
// distinguishability cap (when maximising success) or the success target
// (when minimising distinguishability).  Measurements enter only through the
// projective word relations of moments.hpp, which in particular force the
// outcome weights mu_x(M_{z|y}) to behave like subnormalised probabilities.
// Both directions share one compiler; the objective and the scalar block are
// the only parts that differ.

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "distcc/conic.hpp"
#include "distcc/errors.hpp"
#include "distcc/moments.hpp"
#include "distcc/task.hpp"

namespace distcc {

struct HierarchyResult {
  int level = 0;
  std::string direction;          // "max_success" or "min_distinguishability"
  double constraint_value = 0.0;  // the cap p, resp. the target S
  double bound = 0.0;             // upper bound on S, resp. lower bound on p
  std::string status;
  double duality_gap = 0.0;
  int n_variables = 0;
  double hinge_trace = 0.0;                     // optimal theta_tr
  MomentStructure structure;
  std::vector<Eigen::MatrixXcd> state_moments;  // Gamma_x, one per input
  Eigen::MatrixXcd hinge_moments;               // Gamma_T
  std::string constraint_digest;                // FNV-1a over the compiled LMI
};

namespace detail {

constexpr int kMaxHierarchyVariables = 20000;

inline void fnv1a_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

inline void fnv1a_int(std::uint64_t& h, int v) { fnv1a_bytes(h, &v, sizeof v); }

inline void fnv1a_double(std::uint64_t& h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  fnv1a_bytes(h, &bits, sizeof bits);
}

inline std::string fnv1a_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// Compiles the shared part of both hierarchy directions into an LmiProblem
// and remembers the variable layout for witness reconstruction.
struct HierarchyCompiler {
  const TaskSpec& task;
  MomentStructure ms;
  conic::LmiProblem lmi;
  int n_states = 0;
  int theta_tr = -1;                     // variable index of the hinge trace
  std::vector<std::vector<int>> re_var;  // [tau][word] -> variable or -1
  std::vector<std::vector<int>> im_var;
  int scalar_block = -1;
  std::uint64_t digest = 14695981039346656037ULL;
  int n_variables = 0;

  HierarchyCompiler(const TaskSpec& t, int level) : task(t) {
    if (level < 1 || level > 3)
      fail(errc::invalid_argument, "hierarchy level must be 1, 2, or 3");
    ms = build_moment_structure(task, level);
    n_states = task.n_x;
    const int W = ms.n_words();

    // Count variables first so oversized relaxations are rejected before
    // any allocation: per word and per operator (N states plus the hinge),
    // one real part, plus an imaginary part when the word is not
    // self-adjoint.  The identity word is the constant 1 for states and the
    // free trace for the hinge.
    long total = 0;
    for (int w = 0; w < W; ++w) {
      long per = ms.self_adjoint[w] ? 1 : 2;
      total += per * (n_states + 1);
    }
    total -= n_states;  // state identities are constants, not variables
    if (total > kMaxHierarchyVariables)
      fail(errc::size_exceeded,
           "hierarchy relaxation needs " + std::to_string(total) +
               " variables; the cap is " + std::to_string(kMaxHierarchyVariables));
    n_variables = static_cast<int>(total);

    re_var.assign(static_cast<std::size_t>(n_states) + 1, std::vector<int>(W, -1));
    im_var.assign(static_cast<std::size_t>(n_states) + 1, std::vector<int>(W, -1));
    for (int tau = 0; tau <= n_states; ++tau) {
      for (int w = 0; w < W; ++w) {
        if (w == ms.identity_word && tau < n_states) continue;
        re_var[tau][w] = lmi.add_variable();
        if (!ms.self_adjoint[w]) im_var[tau][w] = lmi.add_variable();
      }
    }
    theta_tr = re_var[n_states][ms.identity_word];

    const int K = ms.n_monomials();
    std::vector<int> gamma_block(n_states), hinge_block(n_states);
    for (int x = 0; x < n_states; ++x) gamma_block[x] = lmi.add_block(K);
    for (int x = 0; x < n_states; ++x) hinge_block[x] = lmi.add_block(K);
    scalar_block = lmi.add_block(1);
    fnv1a_int(digest, level);
    fnv1a_int(digest, n_states);
    fnv1a_int(digest, K);
    fnv1a_int(digest, W);

    for (int x = 0; x < n_states; ++x) {
      add_gamma(gamma_block[x], x, +1.0);
      add_gamma(hinge_block[x], n_states, +1.0);
      add_gamma(hinge_block[x], x, -1.0);
    }
  }

  // Adds sign * Gamma_tau to `block`, upper triangle only (the LMI layer
  // mirrors Hermitian entries).
  void add_gamma(int block, int tau, double sign) {
    const int K = ms.n_monomials();
    for (int i = 0; i < K; ++i) {
      for (int j = i; j < K; ++j) {
        const MomentEntry& e = ms.entry(i, j);
        if (e.word < 0) continue;
        fnv1a_int(digest, block);
        fnv1a_int(digest, i);
        fnv1a_int(digest, j);
        fnv1a_int(digest, e.word);
        fnv1a_double(digest, e.conj ? -sign : sign);
        if (e.word == ms.identity_word && tau < n_states) {
          lmi.add_const(block, i, j, sign);
          continue;
        }
        lmi.add_coeff(re_var[tau][e.word], block, i, j, sign);
        if (im_var[tau][e.word] >= 0)
          lmi.add_coeff(im_var[tau][e.word], block, i, j,
                        conic::Cplx(0.0, e.conj ? -sign : sign));
      }
    }
  }

  // Success probability as an affine expression in the state moments of the
  // single-letter words, after eliminating each question's last outcome
  // through completeness: S = S0 + sum coeff(x, y, z) * mu_x(M_{z|y}).
  double success_constant() const {
    double s0 = 0.0;
    for (int x = 0; x < task.n_x; ++x)
      for (int y = 0; y < task.n_y; ++y) s0 += task.c(x, y, task.n_z - 1);
    return s0;
  }

  template <typename Fn>
  void for_each_success_term(Fn&& fn) const {
    for (int x = 0; x < task.n_x; ++x)
      for (int y = 0; y < task.n_y; ++y)
        for (int z = 0; z + 1 < task.n_z; ++z) {
          double coeff = task.c(x, y, z) - task.c(x, y, task.n_z - 1);
          if (coeff != 0.0) fn(re_var[x][ms.probability_word(y, z)], coeff);
        }
  }

  HierarchyResult finish(const std::string& direction, double constraint_value,
                         double objective_shift, double objective_sign) {
    conic::LmiSolution sol = lmi.solve();
    if (sol.status == conic::LmiStatus::infeasible)
      fail(errc::infeasible,
           direction == "max_success"
               ? "no moment assignment meets the distinguishability cap"
               : "no moment assignment reaches the success target");
    if (sol.status != conic::LmiStatus::optimal)
      fail(errc::solver_failure, "hierarchy solve ended with status " +
                                     std::string(conic::to_string(sol.status)));

    HierarchyResult out;
    out.level = ms.level;
    out.direction = direction;
    out.constraint_value = constraint_value;
    out.bound = objective_sign * sol.optimum + objective_shift;
    out.status = conic::to_string(sol.status);
    out.duality_gap = sol.duality_gap;
    out.n_variables = n_variables;
    out.hinge_trace = sol.u[theta_tr];
    out.structure = std::move(ms);
    out.constraint_digest = "fnv1a:" + fnv1a_hex(digest);

    const int K = out.structure.n_monomials();
    auto moment_matrix = [&](int tau) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(K, K);
      for (int i = 0; i < K; ++i)
        for (int j = i; j < K; ++j) {
          const MomentEntry& e = out.structure.entry(i, j);
          if (e.word < 0) continue;
          conic::Cplx v;
          if (e.word == out.structure.identity_word && tau < n_states) {
            v = 1.0;
          } else {
            double re = sol.u[re_var[tau][e.word]];
            double im = im_var[tau][e.word] >= 0 ? sol.u[im_var[tau][e.word]] : 0.0;
            v = conic::Cplx(re, e.conj ? -im : im);
          }
          g(i, j) = v;
          g(j, i) = std::conj(v);
        }
      return g;
    };
    out.state_moments.reserve(static_cast<std::size_t>(n_states));
    for (int x = 0; x < n_states; ++x) out.state_moments.push_back(moment_matrix(x));
    out.hinge_moments = moment_matrix(n_states);
    return out;
  }
};

}  // namespace detail

// Largest success probability compatible with average distinguishability at
// most `dist_cap`, at the given relaxation level.  The result upper-bounds
// every quantum strategy in every dimension.
inline HierarchyResult hierarchy_max_success(const TaskSpec& task, int level,
                                             double dist_cap) {
  if (!(dist_cap > 0.0) || dist_cap > 1.0 + 1e-9)
    fail(errc::invalid_argument, "distinguishability cap must lie in (0, 1]");
  if (dist_cap < 1.0 / task.n_x - 1e-9)
    fail(errc::infeasible,
         "average distinguishability is at least 1/N for every strategy");

  detail::HierarchyCompiler hc(task, level);
  // Scalar block: dist_cap - (1/N) theta_tr >= 0.
  hc.lmi.add_const(hc.scalar_block, 0, 0, dist_cap);
  hc.lmi.add_coeff(hc.theta_tr, hc.scalar_block, 0, 0, -1.0 / task.n_x);
  detail::fnv1a_double(hc.digest, dist_cap);

  double s0 = hc.success_constant();
  hc.for_each_success_term([&](int var, double coeff) {
    hc.lmi.set_objective(var, coeff);
    detail::fnv1a_int(hc.digest, var);
    detail::fnv1a_double(hc.digest, coeff);
  });
  return hc.finish("max_success", dist_cap, s0, +1.0);
}

// Smallest average distinguishability compatible with success at least
// `success_target`, at the given relaxation level.  Lower-bounds the
// distinguishability cost of every quantum strategy reaching the target.
inline HierarchyResult hierarchy_min_distinguishability(const TaskSpec& task,
                                                        int level,
                                                        double success_target) {
  if (!std::isfinite(success_target))
    fail(errc::invalid_argument, "success target must be finite");
  if (success_target > 1.0 + 1e-9)
    fail(errc::infeasible, "success probabilities never exceed 1");

  detail::HierarchyCompiler hc(task, level);
  // Scalar block: S(moments) - success_target >= 0.
  hc.lmi.add_const(hc.scalar_block, 0, 0, hc.success_constant() - success_target);
  hc.for_each_success_term([&](int var, double coeff) {
    hc.lmi.add_coeff(var, hc.scalar_block, 0, 0, coeff);
    detail::fnv1a_int(hc.digest, var);
    detail::fnv1a_double(hc.digest, coeff);
  });
  detail::fnv1a_double(hc.digest, success_target);

  hc.lmi.set_objective(hc.theta_tr, -1.0 / task.n_x);
  return hc.finish("min_distinguishability", success_target, 0.0, -1.0);
}

// Self-contained description of a hierarchy run: reproducible inputs (level,
// direction, constraint, monomial basis, digest of the compiled LMI) plus
// the certified bound.
inline nlohmann::json hierarchy_certificate(const HierarchyResult& r) {
  nlohmann::json j;
  j["schema"] = "distcc-hierarchy-certificate v1";
  j["level"] = r.level;
  j["direction"] = r.direction;
  j[r.direction == "max_success" ? "distinguishability_cap" : "success_target"] =
      r.constraint_value;
  j["bound"] = r.bound;
  j["status"] = r.status;
  j["duality_gap"] = r.duality_gap;
  j["n_variables"] = r.n_variables;
  j["n_monomials"] = r.structure.n_monomials();
  j["hinge_trace"] = r.hinge_trace;
  j["constraint_digest"] = r.constraint_digest;
  nlohmann::json mons = nlohmann::json::array();
  for (const auto& w : r.structure.monomials)
    mons.push_back(word_to_string(w, r.structure.n_z));
  j["monomials"] = std::move(mons);
  return j;
}

}  // namespace distcc
