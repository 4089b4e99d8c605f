#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "distcc/task.hpp"
#include "matchers.hpp"

using namespace distcc;

namespace {

Behavior uniform_behavior(const TaskSpec& t) {
  return make_behavior(t.n_x, t.n_y, t.n_z,
                       std::vector<double>(t.coeffs.size(), 1.0 / t.n_z));
}

}  // namespace

TEST_CASE("rac_task(2,2) matches hand-built tensor") {
  TaskSpec t = rac_task(2, 2);
  REQUIRE(t.n_x == 4);
  REQUIRE(t.n_y == 2);
  REQUIRE(t.n_z == 2);
  // Eight winning cells, each weighted 1/(n * d^n) = 1/8.
  int nonzero = 0;
  double total = 0.0;
  for (double v : t.coeffs) {
    if (v != 0.0) {
      ++nonzero;
      REQUIRE(v == Catch::Approx(0.125).margin(1e-15));
    }
    total += v;
  }
  REQUIRE(nonzero == 8);
  REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
  // Big-endian digits: x = 2 is the string "10", so y=0 wants z=1, y=1 wants z=0.
  REQUIRE(t.c(2, 0, 1) == Catch::Approx(0.125));
  REQUIRE(t.c(2, 1, 0) == Catch::Approx(0.125));
  REQUIRE(t.c(2, 0, 0) == 0.0);
}

TEST_CASE("rac_task(1,3) is plain state discrimination") {
  TaskSpec t = rac_task(1, 3);
  REQUIRE(t.n_x == 3);
  REQUIRE(t.n_y == 1);
  REQUIRE(t.n_z == 3);
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z)
      REQUIRE(t.c(x, 0, z) == Catch::Approx(x == z ? 1.0 / 3.0 : 0.0).margin(1e-15));
}

TEST_CASE("rac_task(3,2) shape and digit convention") {
  TaskSpec t = rac_task(3, 2);
  REQUIRE(t.n_x == 8);
  REQUIRE(t.n_y == 3);
  // x = 6 is "110": digits 1,1,0.
  REQUIRE(rac_digit(6, 0, 3, 2) == 1);
  REQUIRE(rac_digit(6, 1, 3, 2) == 1);
  REQUIRE(rac_digit(6, 2, 3, 2) == 0);
  double total = 0.0;
  for (double v : t.coeffs) total += v;
  REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("rac_task rejects oversized alphabets") {
  REQUIRE_THROWS_MATCHES(rac_task(21, 2), Error, ErrorCodeIs(errc::overflow));
  REQUIRE_THROWS_MATCHES(rac_task(0, 2), Error, ErrorCodeIs(errc::invalid_argument));
  REQUIRE_THROWS_MATCHES(rac_task(2, 1), Error, ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("pair_distinguishability_task(3) matches hand-built tensor") {
  TaskSpec t = pair_distinguishability_task(3);
  REQUIRE(t.n_x == 3);
  REQUIRE(t.n_y == 3);
  REQUIRE(t.n_z == 3);
  // Pairs in lexicographic order: {0,1}, {0,2}, {1,2}; weight 1/(N(N-1)) = 1/6.
  REQUIRE(t.c(0, 0, 0) == Catch::Approx(1.0 / 6.0));
  REQUIRE(t.c(1, 0, 1) == Catch::Approx(1.0 / 6.0));
  REQUIRE(t.c(0, 1, 0) == Catch::Approx(1.0 / 6.0));
  REQUIRE(t.c(2, 1, 2) == Catch::Approx(1.0 / 6.0));
  REQUIRE(t.c(1, 2, 1) == Catch::Approx(1.0 / 6.0));
  REQUIRE(t.c(2, 2, 2) == Catch::Approx(1.0 / 6.0));
  int nonzero = 0;
  for (double v : t.coeffs)
    if (v != 0.0) ++nonzero;
  REQUIRE(nonzero == 6);
  REQUIRE(pair_index(3, 1, 0) == 0);
  REQUIRE(pair_index(3, 2, 1) == 2);
  REQUIRE(pair_index(5, 3, 4) == 9);
}

TEST_CASE("evaluate_success on reference behaviors") {
  TaskSpec t = rac_task(2, 2);
  // Uniformly random output: every task with normalized coefficients scores 1/D.
  REQUIRE(evaluate_success(t, uniform_behavior(t)) == Catch::Approx(0.5).margin(1e-12));
  // Perfect behavior: always answer the requested digit.
  Behavior perfect = uniform_behavior(t);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        perfect.p(x, y, z) = (z == rac_digit(x, y, 2, 2)) ? 1.0 : 0.0;
  REQUIRE(evaluate_success(t, perfect) == Catch::Approx(1.0).margin(1e-12));
  // Constant answer 0: wins exactly when the requested digit is 0.
  Behavior constant = uniform_behavior(t);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) constant.p(x, y, z) = (z == 0) ? 1.0 : 0.0;
  REQUIRE(evaluate_success(t, constant) == Catch::Approx(0.5).margin(1e-12));

  Behavior wrong_shape = uniform_behavior(rac_task(2, 3));
  REQUIRE_THROWS_MATCHES(evaluate_success(t, wrong_shape), Error,
                         ErrorCodeIs(errc::shape_mismatch));
}

TEST_CASE("evaluate_success is linear in the behavior") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  TaskSpec t = rac_task(2, 3);
  auto random_behavior = [&]() {
    Behavior b{t.n_x, t.n_y, t.n_z,
               std::vector<double>(static_cast<std::size_t>(t.n_x) * t.n_y * t.n_z)};
    for (int x = 0; x < t.n_x; ++x)
      for (int y = 0; y < t.n_y; ++y) {
        double total = 0.0;
        for (int z = 0; z < t.n_z; ++z) total += (b.p(x, y, z) = unif(rng) + 1e-3);
        for (int z = 0; z < t.n_z; ++z) b.p(x, y, z) /= total;
      }
    return b;
  };
  for (int trial = 0; trial < 20; ++trial) {
    Behavior b1 = random_behavior(), b2 = random_behavior();
    double lam = unif(rng);
    Behavior mix = b1;
    for (std::size_t i = 0; i < mix.probs.size(); ++i)
      mix.probs[i] = lam * b1.probs[i] + (1.0 - lam) * b2.probs[i];
    double lhs = evaluate_success(t, mix);
    double rhs = lam * evaluate_success(t, b1) + (1.0 - lam) * evaluate_success(t, b2);
    REQUIRE(lhs == Catch::Approx(rhs).margin(1e-12));
  }
}

TEST_CASE("make_task validation") {
  REQUIRE_THROWS_MATCHES(make_task(2, 1, 2, {0.5, 0.5, -0.1, 0.1}), Error,
                         ErrorCodeIs(errc::negative_coefficient));
  REQUIRE_THROWS_MATCHES(make_task(2, 1, 2, {0.5, 0.5, 0.5}), Error,
                         ErrorCodeIs(errc::shape_mismatch));
  REQUIRE_THROWS_MATCHES(make_task(2, 1, 2, {0.5, 0.5, 0.5, 0.5}), Error,
                         ErrorCodeIs(errc::not_normalized));
  TaskSpec t = make_task(2, 1, 2, {0.5, 0.5, 0.5, 0.5}, true);
  double total = 0.0;
  for (double v : t.coeffs) total += v;
  REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(t.prior(0) == Catch::Approx(0.5));
}

TEST_CASE("task JSON round-trip is bit-exact") {
  for (TaskSpec t : {rac_task(2, 3), pair_distinguishability_task(4)}) {
    nlohmann::json j = task_to_json(t);
    TaskSpec back = task_from_json(j);
    REQUIRE(back.label == t.label);
    REQUIRE(back.n_x == t.n_x);
    REQUIRE(back.n_y == t.n_y);
    REQUIRE(back.n_z == t.n_z);
    REQUIRE(back.coeffs.size() == t.coeffs.size());
    for (std::size_t i = 0; i < t.coeffs.size(); ++i)
      REQUIRE(back.coeffs[i] == t.coeffs[i]);  // exact, not approximate
    for (int x = 0; x < t.n_x; ++x) REQUIRE(back.prior(x) == t.prior(x));
    // Serializing again yields the identical document.
    REQUIRE(task_to_json(back) == j);
  }
}

TEST_CASE("JSON indices are 1-based") {
  TaskSpec t = rac_task(1, 2);
  nlohmann::json j = task_to_json(t);
  // c(x=0, y=0, z=0) = 1/2 must serialize as [1, 1, 1, 0.5].
  bool found = false;
  for (const auto& e : j["coeffs"])
    if (e[0] == 1 && e[1] == 1 && e[2] == 1) {
      REQUIRE(e[3].get<double>() == Catch::Approx(0.5));
      found = true;
    }
  REQUIRE(found);
}
