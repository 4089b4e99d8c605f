#pragma once

// Block-structured conic optimizer behind every solve in this library.
//
// Standard form:
//   (P)  minimize  <C,X>   s.t.  <A_k,X> = b_k  (k = 0..m-1),   X >= 0
//   (D)  maximize  b'y     s.t.  Z = C - sum_k y_k A_k >= 0
// where X ranges over block-diagonal complex Hermitian matrices,
// <U,V> = Re tr(UV), and size-1 blocks are nonnegative scalars. When every
// block has size 1 the problem is an LP and is routed to a sparse
// normal-equations path; otherwise a dense Schur complement is used.
//
// Algorithm: infeasible-start primal-dual interior-point method with the
// HKM direction and Mehrotra predictor-corrector steps. The Schur system
// is M dy = rhs with M_kl = Re tr(A_k X A_l Z^{-1}), which is symmetric
// positive definite as long as the A_k are linearly independent.
//
// Infeasibility is reported only with an approximate improving-ray
// certificate in hand (Farkas-type), so it is distinguishable from plain
// numerical failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "distcc/errors.hpp"

namespace distcc::conic {

using Cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class SolveStatus {
  optimal,
  primal_infeasible,
  dual_infeasible,
  iteration_limit,
  numerical_trouble,
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal_infeasible";
    case SolveStatus::dual_infeasible: return "dual_infeasible";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::numerical_trouble: return "numerical_trouble";
  }
  return "unknown";
}

struct SolveOptions {
  int max_iters = 100;
  double feas_tol = 1e-9;
  double gap_tol = 1e-9;
  // A stalled iterate still counts as optimal while every residual is below
  // relaxed_factor * tol.  Degenerate instances (e.g. a success target pinned
  // exactly at the task maximum, where the feasible set has empty interior)
  // legitimately stall near 1e-6 residuals; accepting up to 1e4 * tol keeps
  // those usable while the reported residuals still qualify the answer.
  double relaxed_factor = 1e4;
  bool verbose = false;
};

struct Solution {
  SolveStatus status = SolveStatus::numerical_trouble;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;  // |pobj - dobj| / (1 + |pobj| + |dobj|)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<MatrixXcd> x_blocks;
  std::vector<MatrixXcd> z_blocks;
  VectorXd y;
  bool ok() const { return status == SolveStatus::optimal; }
};

class Problem {
 public:
  int add_block(int dim) {
    if (dim < 1) fail(errc::invalid_argument, "block dimension must be >= 1");
    dims_.push_back(dim);
    cobj_.emplace_back();
    return static_cast<int>(dims_.size()) - 1;
  }

  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int num_constraints() const { return static_cast<int>(rhs_.size()); }
  int block_dim(int b) const { return dims_[b]; }

  // C(r,c) += v on `block`; the Hermitian mirror entry is implied.
  void add_objective(int block, int r, int c, Cplx v) {
    check_entry(block, r, c, v);
    if (r > c) { std::swap(r, c); v = std::conj(v); }
    cobj_[block].push_back(Entry{r, c, v});
  }

  int add_constraint(double rhs) {
    rhs_.push_back(rhs);
    rows_.emplace_back();
    return static_cast<int>(rhs_.size()) - 1;
  }

  void set_rhs(int row, double rhs) { rhs_[row] = rhs; }

  // A_row(r,c) += v on `block`; Hermitian mirror implied.
  void add_coefficient(int row, int block, int r, int c, Cplx v) {
    check_entry(block, r, c, v);
    if (r > c) { std::swap(r, c); v = std::conj(v); }
    rows_[row].push_back(BlockEntry{block, Entry{r, c, v}});
  }

  Solution solve(const SolveOptions& opts = {}) const {
    if (rhs_.empty()) fail(errc::invalid_argument, "problem has no constraints");
    bool all_scalar = true;
    for (int d : dims_)
      if (d > 1) { all_scalar = false; break; }
    return all_scalar ? solve_lp(opts) : solve_sdp(opts);
  }

 private:
  struct Entry {
    int r, c;
    Cplx v;
  };
  struct BlockEntry {
    int block;
    Entry e;
  };

  std::vector<int> dims_;
  std::vector<std::vector<Entry>> cobj_;
  std::vector<double> rhs_;
  std::vector<std::vector<BlockEntry>> rows_;

  void check_entry(int block, int r, int c, Cplx v) const {
    if (block < 0 || block >= num_blocks())
      fail(errc::invalid_argument, "bad block index");
    int n = dims_[block];
    if (r < 0 || c < 0 || r >= n || c >= n)
      fail(errc::invalid_argument, "matrix entry out of range");
    if (r == c && std::abs(v.imag()) > 1e-12)
      fail(errc::invalid_argument, "diagonal entries must be real");
  }

  static void merge_entries(std::vector<Entry>& e) {
    std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) {
      return a.r != b.r ? a.r < b.r : a.c < b.c;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (out > 0 && e[out - 1].r == e[i].r && e[out - 1].c == e[i].c) {
        e[out - 1].v += e[i].v;
      } else {
        e[out++] = e[i];
      }
    }
    e.resize(out);
  }

  // <A,V> = Re tr(A V) for an upper-triangular entry list.
  static double dot_entries(const std::vector<Entry>& es, const MatrixXcd& V) {
    Cplx acc = 0.0;
    for (const Entry& e : es) {
      acc += e.v * V(e.c, e.r);
      if (e.r != e.c) acc += std::conj(e.v) * V(e.r, e.c);
    }
    return acc.real();
  }

  static void add_scaled(MatrixXcd& W, const std::vector<Entry>& es, double s) {
    for (const Entry& e : es) {
      W(e.r, e.c) += s * e.v;
      if (e.r != e.c) W(e.c, e.r) += s * std::conj(e.v);
    }
  }

  // ---------------------------------------------------------------- SDP --

  struct BlockCons {
    int k;  // constraint index
    std::vector<Entry> e;
  };

  Solution solve_sdp(const SolveOptions& opts) const {
    const int nb = num_blocks();
    const int m = num_constraints();
    const double inf = std::numeric_limits<double>::infinity();

    // Per-block merged views of C and the constraint coefficients.
    std::vector<MatrixXcd> C(nb);
    for (int b = 0; b < nb; ++b) {
      C[b] = MatrixXcd::Zero(dims_[b], dims_[b]);
      std::vector<Entry> es = cobj_[b];
      merge_entries(es);
      add_scaled(C[b], es, 1.0);
    }
    std::vector<std::vector<BlockCons>> bcons(nb);
    {
      std::vector<std::vector<std::vector<Entry>>> tmp(
          nb, std::vector<std::vector<Entry>>(0));
      std::vector<std::vector<int>> kof(nb);
      for (int k = 0; k < m; ++k) {
        // split row k by block
        std::vector<std::pair<int, Entry>> parts;
        for (const BlockEntry& be : rows_[k]) parts.push_back({be.block, be.e});
        std::stable_sort(parts.begin(), parts.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t i = 0;
        while (i < parts.size()) {
          int b = parts[i].first;
          std::vector<Entry> es;
          while (i < parts.size() && parts[i].first == b) es.push_back(parts[i++].second);
          merge_entries(es);
          if (!es.empty()) bcons[b].push_back(BlockCons{k, std::move(es)});
        }
      }
    }

    double total_dim = 0.0, nu = 0.0;
    for (int d : dims_) { total_dim += d; nu += d; }

    double bnorm = 0.0, cnorm = 0.0;
    for (double v : rhs_) bnorm += v * v;
    bnorm = std::sqrt(bnorm);
    for (int b = 0; b < nb; ++b) cnorm += C[b].squaredNorm();
    cnorm = std::sqrt(cnorm);
    double anorm = 0.0;
    for (int b = 0; b < nb; ++b)
      for (const BlockCons& bc : bcons[b])
        for (const Entry& e : bc.e) anorm = std::max(anorm, std::abs(e.v));

    double tau_p = std::max({10.0, std::sqrt(total_dim), bnorm});
    double tau_d = std::max({10.0, std::sqrt(total_dim), cnorm, anorm});

    std::vector<MatrixXcd> X(nb), Z(nb);
    for (int b = 0; b < nb; ++b) {
      X[b] = tau_p * MatrixXcd::Identity(dims_[b], dims_[b]);
      Z[b] = tau_d * MatrixXcd::Identity(dims_[b], dims_[b]);
    }
    VectorXd y = VectorXd::Zero(m);
    VectorXd b_vec = Eigen::Map<const VectorXd>(rhs_.data(), m);

    Solution sol;
    sol.y = y;

    auto record = [&](SolveStatus st, double pobj, double dobj, double pinf,
                      double dinf, double relgap, int iter) {
      sol.status = st;
      sol.primal_objective = pobj;
      sol.dual_objective = dobj;
      sol.duality_gap = relgap;
      sol.primal_residual = pinf;
      sol.dual_residual = dinf;
      sol.iterations = iter;
      sol.x_blocks = X;
      sol.z_blocks = Z;
      sol.y = y;
    };

    std::vector<MatrixXcd> Zinv(nb), Rd(nb), W(nb), Q(nb), dXa(nb), dZa(nb),
        dX(nb), dZ(nb);
    std::vector<Eigen::LLT<MatrixXcd>> lltZ(nb), lltX(nb);
    std::vector<double> mu_hist;

    MatrixXd M(m, m), Mfact(m, m);
    Eigen::LLT<MatrixXd> lltM;

    // Late iterations can trade primal feasibility for gap and drift away
    // from an already excellent iterate, so the best iterate seen (smallest
    // worst residual) is kept and every non-convergent exit is classified
    // against it rather than against wherever the iteration happened to stop.
    struct BestIterate {
      bool valid = false;
      double merit = std::numeric_limits<double>::infinity();
      double pobj = 0, dobj = 0, pinf = 0, dinf = 0, gapm = 0;
      int iter = 0;
      std::vector<MatrixXcd> X, Z;
      VectorXd y;
    } best;
    auto bail = [&](SolveStatus fallback, double pobj, double dobj, double pinf,
                    double dinf, double gapm, int it) {
      if (best.valid && best.merit < std::max({pinf, dinf, gapm})) {
        X = best.X;
        Z = best.Z;
        y = best.y;
        pobj = best.pobj;
        dobj = best.dobj;
        pinf = best.pinf;
        dinf = best.dinf;
        gapm = best.gapm;
        it = best.iter;
      }
      SolveStatus st = (pinf <= opts.relaxed_factor * opts.feas_tol &&
                        dinf <= opts.relaxed_factor * opts.feas_tol &&
                        gapm <= opts.relaxed_factor * opts.gap_tol)
                           ? SolveStatus::optimal
                           : fallback;
      record(st, pobj, dobj, pinf, dinf, gapm, it);
    };

    // A*(y) accumulated into W.
    auto apply_adjoint = [&](const VectorXd& yy, std::vector<MatrixXcd>& out) {
      for (int b = 0; b < nb; ++b) {
        out[b] = MatrixXcd::Zero(dims_[b], dims_[b]);
        for (const BlockCons& bc : bcons[b]) add_scaled(out[b], bc.e, yy[bc.k]);
      }
    };
    // rhs[k] += s * <A_k, V>.
    auto add_dots = [&](const std::vector<MatrixXcd>& V, double s, VectorXd& out) {
      for (int b = 0; b < nb; ++b)
        for (const BlockCons& bc : bcons[b]) out[bc.k] += s * dot_entries(bc.e, V[b]);
    };

    auto inner = [&](const std::vector<MatrixXcd>& U, const std::vector<MatrixXcd>& V) {
      double acc = 0.0;
      for (int b = 0; b < nb; ++b)
        acc += U[b].cwiseProduct(V[b].transpose()).sum().real();
      return acc;
    };

    // Largest step alpha with V + alpha dV >= 0, given V = L L^H.
    auto max_step = [&](const Eigen::LLT<MatrixXcd>& llt, const MatrixXcd& dV) {
      int n = static_cast<int>(dV.rows());
      if (n == 1) {
        double v = llt.matrixLLT()(0, 0).real();
        v = v * v;
        double d = dV(0, 0).real();
        return d >= 0 ? inf : v / (-d);
      }
      MatrixXcd A1 = llt.matrixL().solve(dV);
      MatrixXcd Wm = llt.matrixL().solve(A1.adjoint()).adjoint();
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(Wm, Eigen::EigenvaluesOnly);
      double lmin = es.eigenvalues()(0);
      return lmin >= -1e-14 ? inf : 1.0 / (-lmin);
    };

    int iter = 0;
    double mu0 = inner(X, Z) / nu;
    for (; iter < opts.max_iters; ++iter) {
      // Residuals and convergence checks.
      VectorXd rp = b_vec;
      add_dots(X, -1.0, rp);
      apply_adjoint(y, W);
      double dinf2 = 0.0;
      for (int b = 0; b < nb; ++b) {
        Rd[b] = C[b] - Z[b] - W[b];
        dinf2 += Rd[b].squaredNorm();
      }
      double pobj = inner(C, X);
      double dobj = b_vec.dot(y);
      double mu = inner(X, Z) / nu;
      double pinf = rp.norm() / (1.0 + bnorm);
      double dinf = std::sqrt(dinf2) / (1.0 + cnorm);
      double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      double compl_gap = inner(X, Z) / (1.0 + std::abs(pobj) + std::abs(dobj));
      double gapm = std::max(relgap, compl_gap);

      if (opts.verbose)
        std::fprintf(stderr, "iter %3d  pobj % .9e dobj % .9e gap %.2e pinf %.2e dinf %.2e\n",
                     iter, pobj, dobj, gapm, pinf, dinf);

      if (pinf <= opts.feas_tol && dinf <= opts.feas_tol && gapm <= opts.gap_tol) {
        record(SolveStatus::optimal, pobj, dobj, pinf, dinf, gapm, iter);
        return sol;
      }
      if (std::max({pinf, dinf, gapm}) < best.merit) {
        best.valid = true;
        best.merit = std::max({pinf, dinf, gapm});
        best.pobj = pobj;
        best.dobj = dobj;
        best.pinf = pinf;
        best.dinf = dinf;
        best.gapm = gapm;
        best.iter = iter;
        best.X = X;
        best.Z = Z;
        best.y = y;
      }

      // Farkas-type certificates. (P) infeasible: A*(y) <= 0 with b'y > 0.
      if (iter >= 10) {
        double ysc = y.norm();
        if (ysc > 0 && dobj > 1e6 * (1.0 + bnorm)) {
          double lmax = -inf;
          for (int b = 0; b < nb; ++b) {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(W[b], Eigen::EigenvaluesOnly);
            lmax = std::max(lmax, es.eigenvalues()(dims_[b] - 1));
          }
          if (lmax <= 1e-9 * dobj) {
            record(SolveStatus::primal_infeasible, pobj, dobj, pinf, dinf, gapm, iter);
            return sol;
          }
        }
        // (D) infeasible: A(X) = 0, <C,X> < 0 along a PSD ray.
        double trX = 0.0;
        for (int b = 0; b < nb; ++b) trX += X[b].trace().real();
        if (pobj < -1e6 * (1.0 + cnorm) && trX > 0) {
          VectorXd ax = VectorXd::Zero(m);
          add_dots(X, 1.0, ax);
          if (ax.norm() <= 1e-9 * (-pobj)) {
            record(SolveStatus::dual_infeasible, pobj, dobj, pinf, dinf, gapm, iter);
            return sol;
          }
        }
      }

      // Stall detection.
      mu_hist.push_back(mu);
      if (iter >= 20) {
        double prev = mu_hist[iter - 8];
        if (mu > 0.8 * prev) {
          bail(SolveStatus::numerical_trouble, pobj, dobj, pinf, dinf, gapm, iter);
          return sol;
        }
      }

      // Factor Z and X (X factor reused for step lengths).
      bool fact_ok = true;
      for (int b = 0; b < nb; ++b) {
        lltZ[b].compute(Z[b]);
        if (lltZ[b].info() != Eigen::Success) {
          Z[b] += 1e-12 * tau_d * MatrixXcd::Identity(dims_[b], dims_[b]);
          lltZ[b].compute(Z[b]);
          if (lltZ[b].info() != Eigen::Success) fact_ok = false;
        }
        lltX[b].compute(X[b]);
        if (lltX[b].info() != Eigen::Success) {
          X[b] += 1e-12 * tau_p * MatrixXcd::Identity(dims_[b], dims_[b]);
          lltX[b].compute(X[b]);
          if (lltX[b].info() != Eigen::Success) fact_ok = false;
        }
        if (!fact_ok) break;
        Zinv[b] = lltZ[b].solve(MatrixXcd::Identity(dims_[b], dims_[b]));
      }
      if (!fact_ok) {
        bail(SolveStatus::numerical_trouble, pobj, dobj, pinf, dinf, gapm, iter);
        return sol;
      }

      // Schur complement M_kl = Re tr(A_k X A_l Z^{-1}).
      M.setZero();
      for (int b = 0; b < nb; ++b) {
        const auto& ks = bcons[b];
        if (ks.empty()) continue;
        const int n = dims_[b];
        std::vector<MatrixXcd> T(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) {
          T[i] = MatrixXcd::Zero(n, n);
          for (const Entry& e : ks[i].e) {
            T[i].noalias() += e.v * (X[b].col(e.r) * Zinv[b].row(e.c));
            if (e.r != e.c)
              T[i].noalias() += std::conj(e.v) * (X[b].col(e.c) * Zinv[b].row(e.r));
          }
        }
        for (std::size_t i = 0; i < ks.size(); ++i) {
          for (std::size_t j = 0; j <= i; ++j) {
            Cplx acc = 0.0;
            for (const Entry& e : ks[j].e) {
              acc += e.v * T[i](e.c, e.r);
              if (e.r != e.c) acc += std::conj(e.v) * T[i](e.r, e.c);
            }
            int ki = ks[i].k, kj = ks[j].k;
            double val = acc.real();
            if (ki >= kj) M(ki, kj) += val;
            else M(kj, ki) += val;
          }
        }
      }
      M = M.selfadjointView<Eigen::Lower>();

      // Factor M with escalating ridge if needed.
      double ridge = 0.0;
      double mdiag = M.diagonal().maxCoeff();
      Mfact = M;
      lltM.compute(Mfact);
      while (lltM.info() != Eigen::Success && ridge < 1e-4 * (1.0 + mdiag)) {
        ridge = ridge == 0.0 ? 1e-13 * (1.0 + mdiag) : ridge * 100.0;
        Mfact = M;
        Mfact.diagonal().array() += ridge;
        lltM.compute(Mfact);
      }
      if (lltM.info() != Eigen::Success) {
        bail(SolveStatus::numerical_trouble, pobj, dobj, pinf, dinf, gapm, iter);
        return sol;
      }
      auto schur_solve = [&](const VectorXd& rhs) {
        VectorXd dy = lltM.solve(rhs);
        for (int r = 0; r < 2; ++r) dy += lltM.solve(rhs - M * dy);
        return dy;
      };

      // Predictor (affine direction, sigma = 0).
      for (int b = 0; b < nb; ++b) Q[b] = X[b] * Rd[b] * Zinv[b];
      VectorXd rhs1 = b_vec;
      add_dots(Q, 1.0, rhs1);
      VectorXd dy1 = schur_solve(rhs1);
      apply_adjoint(dy1, W);
      for (int b = 0; b < nb; ++b) {
        dZa[b] = Rd[b] - W[b];
        MatrixXcd raw = -X[b] - X[b] * dZa[b] * Zinv[b];
        dXa[b] = 0.5 * (raw + raw.adjoint());
      }
      double ap_aff = 1.0, ad_aff = 1.0;
      for (int b = 0; b < nb; ++b) {
        ap_aff = std::min(ap_aff, max_step(lltX[b], dXa[b]));
        ad_aff = std::min(ad_aff, max_step(lltZ[b], dZa[b]));
      }
      double mu_aff = 0.0;
      for (int b = 0; b < nb; ++b)
        mu_aff += ((X[b] + ap_aff * dXa[b]).cwiseProduct((Z[b] + ad_aff * dZa[b]).transpose()))
                      .sum()
                      .real();
      mu_aff = std::max(mu_aff / nu, 0.0);
      double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

      // Corrector.
      for (int b = 0; b < nb; ++b)
        Q[b] = (X[b] * Rd[b] + dXa[b] * dZa[b]) * Zinv[b];
      VectorXd rhs2 = b_vec;
      add_dots(Zinv, -sigma * mu, rhs2);
      add_dots(Q, 1.0, rhs2);
      VectorXd dy = schur_solve(rhs2);
      apply_adjoint(dy, W);
      for (int b = 0; b < nb; ++b) {
        dZ[b] = Rd[b] - W[b];
        MatrixXcd raw = sigma * mu * Zinv[b] - X[b] -
                        (X[b] * dZ[b] + dXa[b] * dZa[b]) * Zinv[b];
        dX[b] = 0.5 * (raw + raw.adjoint());
      }

      double gamma = iter < 2 ? 0.9 : 0.98;
      double ap = 1.0, ad = 1.0;
      for (int b = 0; b < nb; ++b) {
        ap = std::min(ap, gamma * max_step(lltX[b], dX[b]));
        ad = std::min(ad, gamma * max_step(lltZ[b], dZ[b]));
      }
      ap = std::min(ap, 1.0);
      ad = std::min(ad, 1.0);

      // Take the step, backing off if a block leaves the cone numerically.
      for (int tries = 0;; ++tries) {
        bool ok = true;
        for (int b = 0; b < nb && ok; ++b) {
          MatrixXcd Xt = X[b] + ap * dX[b];
          Eigen::LLT<MatrixXcd> chk(Xt);
          if (chk.info() != Eigen::Success) ok = false;
        }
        if (ok) break;
        ap *= 0.8;
        if (tries > 40) break;
      }
      for (int tries = 0;; ++tries) {
        bool ok = true;
        for (int b = 0; b < nb && ok; ++b) {
          MatrixXcd Zt = Z[b] + ad * dZ[b];
          Eigen::LLT<MatrixXcd> chk(Zt);
          if (chk.info() != Eigen::Success) ok = false;
        }
        if (ok) break;
        ad *= 0.8;
        if (tries > 40) break;
      }
      for (int b = 0; b < nb; ++b) {
        X[b] += ap * dX[b];
        X[b] = 0.5 * (X[b] + X[b].adjoint()).eval();
        Z[b] += ad * dZ[b];
        Z[b] = 0.5 * (Z[b] + Z[b].adjoint()).eval();
      }
      y += ad * dy;
      (void)mu0;
    }

    // Iteration limit: classify as relaxed-optimal if close enough.
    {
      VectorXd rp = b_vec;
      add_dots(X, -1.0, rp);
      apply_adjoint(y, W);
      double dinf2 = 0.0;
      for (int b = 0; b < nb; ++b) {
        Rd[b] = C[b] - Z[b] - W[b];
        dinf2 += Rd[b].squaredNorm();
      }
      double pobj = inner(C, X);
      double dobj = b_vec.dot(y);
      double pinf = rp.norm() / (1.0 + bnorm);
      double dinf = std::sqrt(dinf2) / (1.0 + cnorm);
      double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      bail(SolveStatus::iteration_limit, pobj, dobj, pinf, dinf, relgap, iter);
    }
    return sol;
  }

  // ----------------------------------------------------------------- LP --

  Solution solve_lp(const SolveOptions& opts) const {
    const int n = num_blocks();
    const int m = num_constraints();
    const double inf = std::numeric_limits<double>::infinity();

    VectorXd c = VectorXd::Zero(n);
    for (int b = 0; b < n; ++b)
      for (const Entry& e : cobj_[b]) c[b] += e.v.real();
    VectorXd b_vec = Eigen::Map<const VectorXd>(rhs_.data(), m);

    Eigen::SparseMatrix<double> A(m, n);
    {
      std::vector<Eigen::Triplet<double>> trips;
      for (int k = 0; k < m; ++k)
        for (const BlockEntry& be : rows_[k])
          trips.emplace_back(k, be.block, be.e.v.real());
      A.setFromTriplets(trips.begin(), trips.end());
    }
    Eigen::SparseMatrix<double> At = A.transpose();

    double bnorm = b_vec.norm(), cnorm = c.norm();
    double tau = std::max({1.0, b_vec.lpNorm<Eigen::Infinity>(),
                           c.lpNorm<Eigen::Infinity>()});
    VectorXd x = VectorXd::Constant(n, tau);
    VectorXd z = VectorXd::Constant(n, tau);
    VectorXd y = VectorXd::Zero(m);

    Solution sol;
    auto record = [&](SolveStatus st, double pobj, double dobj, double pinf,
                      double dinf, double relgap, int iter) {
      sol.status = st;
      sol.primal_objective = pobj;
      sol.dual_objective = dobj;
      sol.duality_gap = relgap;
      sol.primal_residual = pinf;
      sol.dual_residual = dinf;
      sol.iterations = iter;
      sol.x_blocks.resize(n);
      sol.z_blocks.resize(n);
      for (int b = 0; b < n; ++b) {
        sol.x_blocks[b] = MatrixXcd::Constant(1, 1, x[b]);
        sol.z_blocks[b] = MatrixXcd::Constant(1, 1, z[b]);
      }
      sol.y = y;
    };

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    std::vector<double> mu_hist;
    int max_iters = std::max(opts.max_iters, 100);

    // Same policy as the semidefinite path: degenerate problems can drift
    // away from an already excellent iterate late in the run, so keep the
    // best iterate seen and classify every non-convergent exit against it.
    struct BestIterate {
      bool valid = false;
      double merit = std::numeric_limits<double>::infinity();
      double pobj = 0, dobj = 0, pinf = 0, dinf = 0, gapm = 0;
      int iter = 0;
      VectorXd x, z, y;
    } best;
    auto bail = [&](SolveStatus fallback, double pobj, double dobj, double pinf,
                    double dinf, double gapm, int it) {
      if (best.valid && best.merit < std::max({pinf, dinf, gapm})) {
        x = best.x;
        z = best.z;
        y = best.y;
        pobj = best.pobj;
        dobj = best.dobj;
        pinf = best.pinf;
        dinf = best.dinf;
        gapm = best.gapm;
        it = best.iter;
      }
      SolveStatus st = (pinf <= opts.relaxed_factor * opts.feas_tol &&
                        dinf <= opts.relaxed_factor * opts.feas_tol &&
                        gapm <= opts.relaxed_factor * opts.gap_tol)
                           ? SolveStatus::optimal
                           : fallback;
      record(st, pobj, dobj, pinf, dinf, gapm, it);
    };

    int iter = 0;
    for (; iter < max_iters; ++iter) {
      VectorXd rp = b_vec - A * x;
      VectorXd rd = c - At * y - z;
      double mu = x.dot(z) / n;
      double pobj = c.dot(x), dobj = b_vec.dot(y);
      double pinf = rp.norm() / (1.0 + bnorm);
      double dinf = rd.norm() / (1.0 + cnorm);
      double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      double compl_gap = x.dot(z) / (1.0 + std::abs(pobj) + std::abs(dobj));
      double gapm = std::max(relgap, compl_gap);

      if (opts.verbose)
        std::fprintf(stderr, "lp %3d  pobj % .9e dobj % .9e gap %.2e pinf %.2e dinf %.2e\n",
                     iter, pobj, dobj, gapm, pinf, dinf);

      if (pinf <= opts.feas_tol && dinf <= opts.feas_tol && gapm <= opts.gap_tol) {
        record(SolveStatus::optimal, pobj, dobj, pinf, dinf, gapm, iter);
        return sol;
      }
      if (std::max({pinf, dinf, gapm}) < best.merit) {
        best.valid = true;
        best.merit = std::max({pinf, dinf, gapm});
        best.pobj = pobj;
        best.dobj = dobj;
        best.pinf = pinf;
        best.dinf = dinf;
        best.gapm = gapm;
        best.iter = iter;
        best.x = x;
        best.z = z;
        best.y = y;
      }

      if (iter >= 10) {
        if (dobj > 1e6 * (1.0 + bnorm)) {
          VectorXd v = At * y;
          if (v.maxCoeff() <= 1e-9 * dobj) {
            record(SolveStatus::primal_infeasible, pobj, dobj, pinf, dinf, gapm, iter);
            return sol;
          }
        }
        if (pobj < -1e6 * (1.0 + cnorm)) {
          if ((A * x).norm() <= 1e-9 * (-pobj)) {
            record(SolveStatus::dual_infeasible, pobj, dobj, pinf, dinf, gapm, iter);
            return sol;
          }
        }
      }

      mu_hist.push_back(mu);
      if (iter >= 30) {
        double prev = mu_hist[iter - 10];
        if (mu > 0.8 * prev) {
          bail(SolveStatus::numerical_trouble, pobj, dobj, pinf, dinf, gapm, iter);
          return sol;
        }
      }

      VectorXd d = (x.array() / z.array()).matrix();
      Eigen::SparseMatrix<double> AD = A * d.asDiagonal();
      Eigen::SparseMatrix<double> Mn = AD * At;
      double diag_max = 0.0;
      for (int k = 0; k < m; ++k) diag_max = std::max(diag_max, Mn.coeff(k, k));
      Eigen::SparseMatrix<double> I(m, m);
      I.setIdentity();
      Mn = Mn + (1e-13 * (1.0 + diag_max)) * I;
      ldlt.compute(Mn);
      if (ldlt.info() != Eigen::Success) {
        bail(SolveStatus::numerical_trouble, pobj, dobj, pinf, dinf, gapm, iter);
        return sol;
      }
      auto nsolve = [&](const VectorXd& rhs) {
        VectorXd dy = ldlt.solve(rhs);
        for (int r = 0; r < 2; ++r) dy += ldlt.solve(rhs - Mn * dy);
        return dy;
      };

      // Predictor.
      VectorXd rhs1 = b_vec + A * d.cwiseProduct(rd);
      VectorXd dy1 = nsolve(rhs1);
      VectorXd dz1 = rd - At * dy1;
      VectorXd dx1 = -x - d.cwiseProduct(dz1);

      auto max_step_vec = [&](const VectorXd& v, const VectorXd& dv) {
        double a = inf;
        for (int i = 0; i < v.size(); ++i)
          if (dv[i] < 0) a = std::min(a, -v[i] / dv[i]);
        return a;
      };
      double ap_aff = std::min(1.0, max_step_vec(x, dx1));
      double ad_aff = std::min(1.0, max_step_vec(z, dz1));
      double mu_aff = (x + ap_aff * dx1).dot(z + ad_aff * dz1) / n;
      mu_aff = std::max(mu_aff, 0.0);
      double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

      // Corrector.
      VectorXd corr =
          (VectorXd::Constant(n, sigma * mu) - dx1.cwiseProduct(dz1)).cwiseQuotient(z);
      VectorXd rhs2 = b_vec + A * (d.cwiseProduct(rd) - corr);
      VectorXd dy = nsolve(rhs2);
      VectorXd dz = rd - At * dy;
      VectorXd dx = corr - x - d.cwiseProduct(dz);

      double gamma = 0.995;
      double ap = std::min(1.0, gamma * max_step_vec(x, dx));
      double ad = std::min(1.0, gamma * max_step_vec(z, dz));
      x += ap * dx;
      z += ad * dz;
      y += ad * dy;
    }

    VectorXd rp = b_vec - A * x;
    VectorXd rd = c - At * y - z;
    double pobj = c.dot(x), dobj = b_vec.dot(y);
    double pinf = rp.norm() / (1.0 + bnorm);
    double dinf = rd.norm() / (1.0 + cnorm);
    double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double compl_gap = x.dot(z) / (1.0 + std::abs(pobj) + std::abs(dobj));
    bail(SolveStatus::iteration_limit, pobj, dobj, pinf, dinf,
         std::max(relgap, compl_gap), iter);
    return sol;
  }
};

// ---------------------------------------------------------------- LMI ----
//
// Feasibility/optimization in the form
//   maximize g'u  s.t.  F0_b + sum_k u_k Fk_b >= 0   for every block b,
// with free real variables u. Mapped onto (D) above via C = F0, A_k = -F_k,
// b = g; the solver's primal certificate doubles as the infeasibility /
// unboundedness witness.

enum class LmiStatus { optimal, infeasible, unbounded, iteration_limit, numerical_trouble };

inline const char* to_string(LmiStatus s) {
  switch (s) {
    case LmiStatus::optimal: return "optimal";
    case LmiStatus::infeasible: return "infeasible";
    case LmiStatus::unbounded: return "unbounded";
    case LmiStatus::iteration_limit: return "iteration_limit";
    case LmiStatus::numerical_trouble: return "numerical_trouble";
  }
  return "unknown";
}

struct LmiSolution {
  LmiStatus status = LmiStatus::numerical_trouble;
  double optimum = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
  VectorXd u;
  std::vector<MatrixXcd> slack_blocks;  // F0 + sum u_k Fk at the solution
  bool ok() const { return status == LmiStatus::optimal; }
};

class LmiProblem {
 public:
  int add_block(int dim) {
    dims_.push_back(dim);
    f0_.emplace_back();
    return static_cast<int>(dims_.size()) - 1;
  }
  int add_variable(double objective_coeff = 0.0) {
    g_.push_back(objective_coeff);
    coeffs_.emplace_back();
    return static_cast<int>(g_.size()) - 1;
  }
  void set_objective(int var, double g) { g_[var] = g; }
  // F0(r,c) += v on block (Hermitian mirror implied).
  void add_const(int block, int r, int c, Cplx v) {
    f0_[block].push_back({r, c, v});
  }
  // Fk(r,c) += v on block for variable var.
  void add_coeff(int var, int block, int r, int c, Cplx v) {
    coeffs_[var].push_back({block, r, c, v});
  }
  int num_variables() const { return static_cast<int>(g_.size()); }

  LmiSolution solve(const SolveOptions& opts = {}) const {
    Problem p;
    for (int d : dims_) p.add_block(d);
    for (std::size_t b = 0; b < f0_.size(); ++b)
      for (const auto& e : f0_[b]) p.add_objective(static_cast<int>(b), e.r, e.c, e.v);
    for (std::size_t k = 0; k < g_.size(); ++k) {
      int row = p.add_constraint(g_[k]);
      for (const auto& e : coeffs_[k]) p.add_coefficient(row, e.block, e.r, e.c, -e.v);
    }
    Solution s = p.solve(opts);
    LmiSolution out;
    out.iterations = s.iterations;
    out.duality_gap = s.duality_gap;
    out.u = s.y;
    out.slack_blocks = s.z_blocks;
    out.optimum = s.dual_objective;
    switch (s.status) {
      case SolveStatus::optimal: out.status = LmiStatus::optimal; break;
      case SolveStatus::dual_infeasible: out.status = LmiStatus::infeasible; break;
      case SolveStatus::primal_infeasible: out.status = LmiStatus::unbounded; break;
      case SolveStatus::iteration_limit: out.status = LmiStatus::iteration_limit; break;
      default: out.status = LmiStatus::numerical_trouble; break;
    }
    return out;
  }

 private:
  struct F0Entry {
    int r, c;
    Cplx v;
  };
  struct VarEntry {
    int block, r, c;
    Cplx v;
  };
  std::vector<int> dims_;
  std::vector<std::vector<F0Entry>> f0_;
  std::vector<double> g_;
  std::vector<std::vector<VarEntry>> coeffs_;
};

}  // namespace distcc::conic
