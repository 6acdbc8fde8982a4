#include "vernation/calculus.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "vernation/experiments.hpp"
#include "vernation/metrics.hpp"

using namespace vernation;
using vernation::testing::mixed_excursion;
using vernation::testing::random_excursion;

namespace {

// the defining series restricted to jumps, kept as an oracle for Jf
double j_sum_oracle(const Excursion& f, double t, double min_height = 0.0) {
  double sum = 0.0;
  for (const auto& jr : f.jumps())
    if (jr.height >= min_height) sum += f.x_value(jr.time, t);
  return sum;
}

}  // namespace

TEST_CASE("j_transform on the named excursions") {
  const Excursion a = linear_excursion();
  CHECK(sup_norm_diff(j_transform(a), a) <= 1e-12);  // PJG fixed point

  const Excursion b = tent_excursion();
  CHECK(j_transform(b).sup() <= 1e-12);  // continuous excursions vanish

  const Excursion m = mixed_excursion();
  const Excursion jm = j_transform(m);
  CHECK(jm.value(0.1) == doctest::Approx(0.0));
  CHECK(jm.value(0.2499) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(jm.value(0.25) == doctest::Approx(0.5));
  CHECK(jm.value(0.5) == doctest::Approx(0.25));
  CHECK(jm.value(0.75) == doctest::Approx(0.0));
  CHECK(jm.value(0.9) == doctest::Approx(0.0));
}

TEST_CASE("j_transform equals the defining sum on random input") {
  Rng rng({20260810, 31});
  for (int rep = 0; rep < 12; ++rep) {
    const Excursion f = random_excursion(rng);
    const Excursion jf = j_transform(f);
    for (int q = 0; q < 50; ++q) {
      const double t = rng.real01();
      CHECK(jf.value(t) == doctest::Approx(j_sum_oracle(f, t)).epsilon(1e-9));
    }
    CHECK(jf.value(1.0) == 0.0);
  }
}

TEST_CASE("j_eps thresholds jumps") {
  const Excursion m = mixed_excursion();
  CHECK(j_eps(m, 0.6).sup() <= 1e-12);                      // only jump is 0.5
  CHECK(sup_norm_diff(j_eps(m, 0.4), j_transform(m)) <= 1e-12);
  const Excursion a = linear_excursion();
  CHECK(sup_norm_diff(j_eps(a, 1.0), j_transform(a)) <= 1e-12);  // height 1 >= eps
  CHECK_THROWS(j_eps(a, 0.0));

  Rng rng({20260810, 32});
  for (int rep = 0; rep < 8; ++rep) {
    const Excursion f = random_excursion(rng);
    const Excursion je = j_eps(f, 0.3);
    for (const auto& jr : je.jumps()) CHECK(jr.height >= 0.3 - 1e-12);
    for (int q = 0; q < 30; ++q) {
      const double t = rng.real01();
      CHECK(je.value(t) == doctest::Approx(j_sum_oracle(f, t, 0.3)).epsilon(1e-9));
    }
  }
}

TEST_CASE("classification of the three named excursions") {
  CHECK(classify(linear_excursion()) == ExcursionClass::Pjg);
  CHECK(classify(tent_excursion()) == ExcursionClass::Continuous);
  CHECK(classify(mixed_excursion()) == ExcursionClass::Mixed);
  CHECK(classify(Excursion::zero()) == ExcursionClass::Continuous);
}

TEST_CASE("idempotence of J") {
  Rng rng({20260810, 33});
  for (int rep = 0; rep < 12; ++rep) {
    const Excursion f = random_excursion(rng);
    const Excursion jf = j_transform(f);
    CHECK(sup_norm_diff(j_transform(jf), jf) <= 1e-9);
    const Excursion cont = linear_combine({{1.0, &f}, {-1.0, &jf}});
    CHECK(j_transform(cont).sup() <= 1e-9);
    CHECK(cont.jumps().empty());
  }
}

TEST_CASE("d_J identities on a 64-point grid") {
  Rng rng({20260810, 34});
  std::vector<double> grid;
  for (int i = 0; i <= 64; ++i) grid.push_back(double(i) / 64.0);
  for (int rep = 0; rep < 8; ++rep) {
    const Excursion f = random_excursion(rng, 14);
    const Decomposition dec = decompose(f);
    const DistanceMatrix loop_f = matrix(f, MetricKind::loop(), grid);
    const DistanceMatrix loop_jf = matrix(dec.pjg_part, MetricKind::loop(), grid);
    CHECK(matrix_sup_diff(loop_f, loop_jf) <= 1e-9);
    const DistanceMatrix tree_f = matrix(f, MetricKind::tree(), grid);
    const DistanceMatrix clas_cont =
        matrix(dec.continuous_part, MetricKind::classic(), grid);
    CHECK(matrix_sup_diff(tree_f, clas_cont) <= 1e-9);
    // x-values transfer to Jf
    for (const auto& jr : f.jumps())
      for (int q = 0; q < 8; ++q) {
        const double t = rng.real01();
        CHECK(dec.pjg_part.x_value(jr.time, t) ==
              doctest::Approx(f.x_value(jr.time, t)).epsilon(1e-9));
      }
  }
}

TEST_CASE("regularize satisfies J(g) = J^eps f") {
  Rng rng({20260810, 35});
  for (int rep = 0; rep < 10; ++rep) {
    const Excursion f = random_excursion(rng);
    for (double eps : {0.05, 0.2, 0.5}) {
      const Excursion g = regularize(f, eps);
      CHECK(sup_norm_diff(j_transform(g), j_eps(f, eps)) <= 1e-9);
    }
  }
  // fixed points
  const Excursion a = linear_excursion();
  CHECK(sup_norm_diff(regularize(a, 0.5), a) <= 1e-12);
  const Excursion b = tent_excursion();
  CHECK(sup_norm_diff(regularize(b, 0.5), b) <= 1e-12);
  const Excursion m = mixed_excursion();
  const Excursion g = regularize(m, 0.6);
  const Excursion jm = j_transform(m);
  CHECK(sup_norm_diff(g, linear_combine({{1.0, &m}, {-1.0, &jm}})) <= 1e-12);
}

TEST_CASE("propo bound relates d_loop of f and of J^eps f") {
  Rng rng({20260810, 36});
  std::vector<double> grid;
  for (int i = 0; i <= 48; ++i) grid.push_back(double(i) / 48.0);
  for (int rep = 0; rep < 6; ++rep) {
    const Excursion f = random_excursion(rng);
    const Excursion jf = j_transform(f);
    for (double eps : {0.05, 0.2, 0.5}) {
      const Excursion je = j_eps(f, eps);
      const double rhs = 2.0 * sup_norm_diff(jf, je);
      const double lhs = matrix_sup_diff(matrix(f, MetricKind::loop(), grid),
                                         matrix(je, MetricKind::loop(), grid));
      CHECK(lhs <= rhs + 1e-9);
    }
  }
}

TEST_CASE("cv_J monotone convergence and commutation") {
  Rng rng({20260810, 37});
  for (int rep = 0; rep < 5; ++rep) {
    const Excursion f = random_excursion(rng, 12);
    const Excursion jf = j_transform(f);
    double prev = 1e100;
    double min_jump = 1e100;
    for (const auto& jr : f.jumps()) min_jump = std::min(min_jump, jr.height);
    for (int n = 2; n <= 64; n *= 2) {
      const double gap = sup_norm_diff(jf, j_eps(f, 1.0 / n));
      CHECK(gap <= prev + 1e-12);
      prev = gap;
      if (!f.jumps().empty() && 1.0 / n < min_jump) CHECK(gap <= 1e-12);
    }
    // J commutes with Theta and with time changes
    CHECK(sup_norm_diff(j_transform(theta(f)), theta(jf)) <= 1e-9);
    const Warp lambda{{{0.0, 0.0}, {0.3, 0.55}, {1.0, 1.0}}};
    CHECK(sup_norm_diff(j_transform(time_change(f, lambda)), time_change(jf, lambda)) <=
          1e-9);
  }
}

TEST_CASE("branch_split contracts and errors") {
  const Excursion a = linear_excursion();
  const BranchSplit whole = branch_split(a, 0.0, 1.0);
  CHECK(whole.outer.sup() <= 1e-12);
  CHECK(sup_norm_diff(whole.inner, a) <= 1e-12);

  const Excursion m = mixed_excursion();
  const BranchSplit split = branch_split(m, 0.25, 0.75);
  CHECK(split.inner.jump_at(0.0) == doctest::Approx(0.5));
  CHECK(split.inner.sup() == doctest::Approx(0.5));
  CHECK(split.outer.value(0.5) == doctest::Approx(0.25));  // plateau
  CHECK(split.outer.value(0.1) == doctest::Approx(0.1));

  CHECK_THROWS(branch_split(m, 0.3, 0.5));  // f(u-) != f(v-)
}
