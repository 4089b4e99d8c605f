#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "distcc/conic.hpp"

using namespace distcc;
using conic::Cplx;
using conic::LmiProblem;
using conic::LmiStatus;
using conic::Problem;
using conic::Solution;
using conic::SolveStatus;

namespace {
const Cplx I_(0.0, 1.0);
}

TEST_CASE("lp: bounded two-variable problem", "[conic][lp]") {
  // min -x1 - 2 x2  s.t.  x1 + x2 + s = 1, x >= 0  ->  x2 = 1, opt -2.
  Problem p;
  int x1 = p.add_block(1), x2 = p.add_block(1), s = p.add_block(1);
  p.add_objective(x1, 0, 0, -1.0);
  p.add_objective(x2, 0, 0, -2.0);
  int row = p.add_constraint(1.0);
  p.add_coefficient(row, x1, 0, 0, 1.0);
  p.add_coefficient(row, x2, 0, 0, 1.0);
  p.add_coefficient(row, s, 0, 0, 1.0);
  Solution sol = p.solve();
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == Catch::Approx(-2.0).margin(1e-8));
  CHECK(sol.duality_gap <= 1e-7);
  CHECK(sol.x_blocks[x2](0, 0).real() == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("lp: simplex minimum picks smallest cost", "[conic][lp]") {
  // min c'x over the probability simplex = min_i c_i.
  Problem p;
  std::vector<double> c = {0.7, 0.3, 0.9, 0.45};
  for (double ci : c) {
    int b = p.add_block(1);
    p.add_objective(b, 0, 0, ci);
  }
  int row = p.add_constraint(1.0);
  for (int b = 0; b < 4; ++b) p.add_coefficient(row, b, 0, 0, 1.0);
  Solution sol = p.solve();
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == Catch::Approx(0.3).margin(1e-8));
}

TEST_CASE("lp: infeasible system is certified", "[conic][lp]") {
  // x1 + x2 = -1 with x >= 0 has no solution.
  Problem p;
  p.add_block(1);
  p.add_block(1);
  int row = p.add_constraint(-1.0);
  p.add_coefficient(row, 0, 0, 0, 1.0);
  p.add_coefficient(row, 1, 0, 0, 1.0);
  Solution sol = p.solve();
  CHECK(sol.status == SolveStatus::primal_infeasible);
}

TEST_CASE("lp: unbounded objective is certified", "[conic][lp]") {
  // min -x1 s.t. x2 = 1: x1 can grow without bound.
  Problem p;
  p.add_block(1);
  p.add_block(1);
  p.add_objective(0, 0, 0, -1.0);
  int row = p.add_constraint(1.0);
  p.add_coefficient(row, 1, 0, 0, 1.0);
  Solution sol = p.solve();
  CHECK(sol.status == SolveStatus::dual_infeasible);
}

TEST_CASE("sdp: largest eigenvalue via trace-one constraint", "[conic][sdp]") {
  // max tr(CX) s.t. tr X = 1, X >= 0 equals lambda_max(C).
  // C = [[2, i],[-i, 2]] has eigenvalues {1, 3}.
  Problem p;
  int b = p.add_block(2);
  p.add_objective(b, 0, 0, -2.0);
  p.add_objective(b, 1, 1, -2.0);
  p.add_objective(b, 0, 1, -I_);
  int row = p.add_constraint(1.0);
  p.add_coefficient(row, b, 0, 0, 1.0);
  p.add_coefficient(row, b, 1, 1, 1.0);
  Solution sol = p.solve();
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == Catch::Approx(-3.0).margin(1e-7));
  CHECK(sol.duality_gap <= 1e-7);
  // Optimizer is the rank-one projector onto the top eigenvector.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sol.x_blocks[b]);
  CHECK(es.eigenvalues()(1) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("sdp: mixed scalar and matrix blocks", "[conic][sdp]") {
  // min 2s + tr(Y) s.t. s + Y00 = 2, Y11 = 1 -> s = 0, opt 3.
  Problem p;
  int s = p.add_block(1), y = p.add_block(2);
  p.add_objective(s, 0, 0, 2.0);
  p.add_objective(y, 0, 0, 1.0);
  p.add_objective(y, 1, 1, 1.0);
  int r0 = p.add_constraint(2.0);
  p.add_coefficient(r0, s, 0, 0, 1.0);
  p.add_coefficient(r0, y, 0, 0, 1.0);
  int r1 = p.add_constraint(1.0);
  p.add_coefficient(r1, y, 1, 1, 1.0);
  Solution sol = p.solve();
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == Catch::Approx(3.0).margin(1e-7));
  CHECK(sol.x_blocks[s](0, 0).real() == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("sdp: binary state discrimination reaches the Helstrom value", "[conic][sdp]") {
  // max (1/2) tr(rho1 M1) + (1/2) tr(rho2 M2), M1 + M2 = I, M >= 0.
  // For pure states with overlap 1/2 the optimum is 1/2 + sqrt(2)/4.
  Eigen::MatrixXcd rho1(2, 2), rho2(2, 2);
  rho1 << 1, 0, 0, 0;
  rho2 << 0.5, -0.5 * I_, 0.5 * I_, 0.5;  // |0> + i|1> projector
  Problem p;
  int m1 = p.add_block(2), m2 = p.add_block(2);
  for (int r = 0; r < 2; ++r)
    for (int c = r; c < 2; ++c) {
      p.add_objective(m1, r, c, -0.5 * rho1(c, r));  // tr(rho M): coeff of M_rc
      p.add_objective(m2, r, c, -0.5 * rho2(c, r));
    }
  // completeness: M1 + M2 = I entrywise. The Hermitian mirror is implied,
  // so an off-diagonal coefficient 1/2 picks out Re X(r,c) and i/2 picks
  // out Im X(r,c).
  for (int r = 0; r < 2; ++r)
    for (int c = r; c < 2; ++c) {
      double w = r == c ? 1.0 : 0.5;
      int re = p.add_constraint(r == c ? 1.0 : 0.0);
      p.add_coefficient(re, m1, r, c, w);
      p.add_coefficient(re, m2, r, c, w);
      if (r == c) continue;
      int im = p.add_constraint(0.0);
      p.add_coefficient(im, m1, r, c, 0.5 * I_);
      p.add_coefficient(im, m2, r, c, 0.5 * I_);
    }
  Solution sol = p.solve();
  REQUIRE(sol.status == SolveStatus::optimal);
  double expect = 0.5 + std::sqrt(2.0) / 4.0;
  CHECK(-sol.primal_objective == Catch::Approx(expect).margin(1e-7));
}

TEST_CASE("lmi: scalar off-diagonal bound", "[conic][lmi]") {
  // max u s.t. [[1, u],[u, 1]] >= 0  ->  u = 1.
  LmiProblem lmi;
  int b = lmi.add_block(2);
  lmi.add_const(b, 0, 0, 1.0);
  lmi.add_const(b, 1, 1, 1.0);
  int u = lmi.add_variable(1.0);
  lmi.add_coeff(u, b, 0, 1, 1.0);
  auto sol = lmi.solve();
  REQUIRE(sol.status == LmiStatus::optimal);
  CHECK(sol.optimum == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("lmi: infeasible constraints are certified", "[conic][lmi]") {
  // u - 1 >= 0 and -u - 1 >= 0 cannot hold together (one 2x2 block).
  LmiProblem lmi;
  int b = lmi.add_block(2);
  lmi.add_const(b, 0, 0, -1.0);
  lmi.add_const(b, 1, 1, -1.0);
  int u = lmi.add_variable(0.0);
  lmi.add_coeff(u, b, 0, 0, 1.0);
  lmi.add_coeff(u, b, 1, 1, -1.0);
  auto sol = lmi.solve();
  CHECK(sol.status == LmiStatus::infeasible);
}

TEST_CASE("lmi: unbounded objective is certified", "[conic][lmi]") {
  // max u s.t. [[1 + u, 0],[0, 2]] >= 0: u unbounded above.
  LmiProblem lmi;
  int b = lmi.add_block(2);
  lmi.add_const(b, 0, 0, 1.0);
  lmi.add_const(b, 1, 1, 2.0);
  int u = lmi.add_variable(1.0);
  lmi.add_coeff(u, b, 0, 0, 1.0);
  auto sol = lmi.solve();
  CHECK(sol.status == LmiStatus::unbounded);
}

TEST_CASE("solver reruns are bit-identical", "[conic][determinism]") {
  Problem p;
  int b = p.add_block(3);
  p.add_objective(b, 0, 1, Cplx(0.3, 0.1));
  p.add_objective(b, 2, 2, -1.0);
  p.add_objective(b, 0, 0, 0.25);
  int row = p.add_constraint(1.0);
  for (int i = 0; i < 3; ++i) p.add_coefficient(row, b, i, i, 1.0);
  int row2 = p.add_constraint(0.2);
  p.add_coefficient(row2, b, 0, 1, Cplx(0.0, 0.5));
  p.add_coefficient(row2, b, 1, 0, Cplx(0.0, -0.5));
  Solution a = p.solve(), c = p.solve();
  REQUIRE(a.status == c.status);
  CHECK(a.primal_objective == c.primal_objective);
  CHECK(a.dual_objective == c.dual_objective);
  CHECK((a.x_blocks[b] - c.x_blocks[b]).norm() == 0.0);
}
