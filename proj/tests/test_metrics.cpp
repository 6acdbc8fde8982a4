#include "vernation/metrics.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "vernation/calculus.hpp"
#include "vernation/experiments.hpp"

using namespace vernation;
using vernation::testing::mixed_excursion;
using vernation::testing::random_excursion;

TEST_CASE("d_classic worked examples") {
  const Excursion b = tent_excursion();
  CHECK(d_classic(b, 0.0, 0.5) == doctest::Approx(0.5));
  CHECK(d_classic(b, 0.25, 0.75) == doctest::Approx(0.0));
  CHECK(d_classic(b, 0.37, 0.37) == 0.0);
}

TEST_CASE("d_loop worked examples") {
  const Excursion a = linear_excursion();
  CHECK(d_loop(a, 0.25, 0.75) == doctest::Approx(0.5));
  CHECK(d_loop(a, 0.1, 0.2) == doctest::Approx(0.1));
  const Excursion b = tent_excursion();
  CHECK(d_loop(b, 0.2, 0.9) == 0.0);  // continuous excursions code a point
}

TEST_CASE("d_tree worked examples") {
  const Excursion a = linear_excursion();
  CHECK(d_tree(a, 0.3, 0.8) == doctest::Approx(0.0));  // PJG
  const Excursion b = tent_excursion();
  CHECK(d_tree(b, 0.2, 0.6) == doctest::Approx(d_classic(b, 0.2, 0.6)));
  const Excursion m = mixed_excursion();
  CHECK(d_tree(m, 0.25, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("d_vern worked examples") {
  const Excursion m = mixed_excursion();
  // farthest point from the root: quarter segment plus half the loop
  const DistanceMatrix dm = matrix(m, MetricKind::vern(), build_sample_times(m, 200, 8));
  CHECK(dm.max_entry() == doctest::Approx(0.75).epsilon(0.015));
  const Excursion b = tent_excursion();
  CHECK(d_vern(b, 0.2, 0.6) == doctest::Approx(d_tree(b, 0.2, 0.6)));
  const Excursion a = linear_excursion();
  CHECK(d_vern(a, 0.2, 0.6) == doctest::Approx(2.0 * d_loop(a, 0.2, 0.6)));
}

TEST_CASE("shuffled distances collapse to plain ones under identity") {
  const Excursion a = linear_excursion();
  const Shuffle s = Shuffle::identity_above(0.1);
  for (double t : {0.1, 0.33, 0.62, 0.95}) {
    CHECK(d_loop_shuffled(a, s, 0.0, t) == doctest::Approx(d_loop(a, 0.0, t)));
    CHECK(d_loop_shuffled(a, s, t, t) == 0.0);
  }
  const Shuffle def = Shuffle::defaulted();  // height 1 >= 1, phi = id
  CHECK(d_loop_shuffled(a, def, 0.0, 0.4) == doctest::Approx(d_loop(a, 0.0, 0.4)));
}

TEST_CASE("three-term mrca route agrees with the jump-sum identities") {
  Rng rng({20260810, 21});
  const Shuffle s = Shuffle::defaulted();
  for (int rep = 0; rep < 10; ++rep) {
    const Excursion f = random_excursion(rng, 14);
    for (int q = 0; q < 40; ++q) {
      double a = rng.real01(), b = rng.real01();
      if (a > b) std::swap(a, b);
      CHECK(d_loop_via_mrca(f, a, b) == doctest::Approx(d_loop(f, a, b)).epsilon(1e-9));
      CHECK(d_loop_shuffled_via_mrca(f, s, a, b) ==
            doctest::Approx(d_loop_shuffled(f, s, a, b)).epsilon(1e-9));
    }
  }
}

TEST_CASE("pseudo-distance axioms on random excursions") {
  Rng rng({20260810, 22});
  const Shuffle s = Shuffle::defaulted();
  const std::vector<MetricKind> kinds = {
      MetricKind::classic(),        MetricKind::tree(),
      MetricKind::loop(),           MetricKind::vern(),
      MetricKind::loop_shuffled(s), MetricKind::vern_shuffled(s)};
  for (int rep = 0; rep < 6; ++rep) {
    const Excursion f = random_excursion(rng);
    std::vector<double> pts{1.0};
    for (int i = 0; i < 40; ++i) pts.push_back(rng.real01());
    JumpTable table(f, pts, s);
    for (const auto& kind : kinds)
      for (int q = 0; q < 300; ++q) {
        const std::size_t i = rng.below(pts.size());
        const std::size_t j = rng.below(pts.size());
        const std::size_t k = rng.below(pts.size());
        const double dij = table.distance(kind, i, j);
        CHECK(table.distance(kind, j, i) == dij);  // exact symmetry
        CHECK(table.distance(kind, i, i) == 0.0);
        CHECK(dij <= table.distance(kind, i, k) + table.distance(kind, k, j) + 1e-9);
      }
  }
}

TEST_CASE("upper bounds maj_dl and maj_dtree") {
  Rng rng({20260810, 23});
  for (int rep = 0; rep < 10; ++rep) {
    const Excursion f = random_excursion(rng);
    for (int q = 0; q < 100; ++q) {
      double s = rng.real01(), t = rng.real01();
      if (s > t) std::swap(s, t);
      if (s == t) continue;
      const double cap =
          f.value(s) + f.left_limit(t) - 2.0 * f.range_inf(s, t) + 1e-9;
      CHECK(d_loop(f, s, t) <= cap);
      CHECK(d_tree(f, s, t) <= cap);
    }
  }
}

TEST_CASE("homogeneity and time change") {
  Rng rng({20260810, 24});
  for (int rep = 0; rep < 8; ++rep) {
    const Excursion f = random_excursion(rng, 12);
    const double alpha = 0.5 + 2.0 * rng.real01();
    const Excursion af = scale(f, alpha);
    const Warp lambda{{{0.0, 0.0}, {0.4, 0.25}, {0.8, 0.9}, {1.0, 1.0}}};
    const Excursion fl = time_change(f, lambda);
    const Shuffle s = Shuffle::defaulted();
    for (int q = 0; q < 30; ++q) {
      const double u = rng.real01(), v = rng.real01();
      CHECK(d_loop(af, u, v) == doctest::Approx(alpha * d_loop(f, u, v)).epsilon(1e-12));
      CHECK(d_tree(af, u, v) == doctest::Approx(alpha * d_tree(f, u, v)).epsilon(1e-12));
      CHECK(d_vern(af, u, v) == doctest::Approx(alpha * d_vern(f, u, v)).epsilon(1e-12));
      // time-changing property holds for every kind, shuffled included
      CHECK(d_loop(fl, u, v) ==
            doctest::Approx(d_loop(f, lambda(u), lambda(v))).epsilon(1e-9));
      CHECK(d_tree(fl, u, v) ==
            doctest::Approx(d_tree(f, lambda(u), lambda(v))).epsilon(1e-9));
      CHECK(d_loop_shuffled(fl, s, u, v) ==
            doctest::Approx(d_loop_shuffled(f, s, lambda(u), lambda(v))).epsilon(1e-9));
    }
  }
}

TEST_CASE("branching property splits distances") {
  const Excursion m = mixed_excursion();
  const BranchSplit split = branch_split(m, 0.25, 0.75);
  Rng rng({20260810, 25});
  for (int q = 0; q < 60; ++q) {
    double s = rng.real01(), t = rng.real01();
    // inside the branch: d(f; u+s(v-u), u+t(v-u)) = d(h; s, t)
    const double fs = 0.25 + s * 0.5, ft = 0.25 + t * 0.5;
    CHECK(d_loop(m, fs, ft) == doctest::Approx(d_loop(split.inner, s, t)).epsilon(1e-9));
    CHECK(d_tree(m, fs, ft) == doctest::Approx(d_tree(split.inner, s, t)).epsilon(1e-9));
    // outside: distances live in g
    double a = rng.real01() * 0.25, b = 0.75 + rng.real01() * 0.25;
    CHECK(d_loop(m, a, b) == doctest::Approx(d_loop(split.outer, a, b)).epsilon(1e-9));
    CHECK(d_tree(m, a, b) == doctest::Approx(d_tree(split.outer, a, b)).epsilon(1e-9));
    // across: d(f; u+s(v-u), a) = d(g; a, u) + d(h; s, 1)
    CHECK(d_loop(m, fs, a) ==
          doctest::Approx(d_loop(split.outer, a, 0.25) + d_loop(split.inner, s, 1.0))
              .epsilon(1e-9));
  }
}

TEST_CASE("geo_tree: ancestors make d_tree additive towards the root") {
  Rng rng({20260810, 26});
  for (int rep = 0; rep < 10; ++rep) {
    const Excursion f = random_excursion(rng, 14);
    for (const auto& jr : f.jumps())
      for (int q = 0; q < 10; ++q) {
        const double t = jr.time + (1.0 - jr.time) * rng.real01();
        if (!f.genealogy(jr.time, t).is_ancestor) continue;
        CHECK(d_tree(f, t, 1.0) ==
              doctest::Approx(d_tree(f, jr.time, 1.0) + d_tree(f, jr.time, t))
                  .epsilon(1e-9));
      }
  }
}

TEST_CASE("jump circles embed isometrically") {
  Rng rng({20260810, 27});
  for (int rep = 0; rep < 6; ++rep) {
    const Excursion f = random_excursion(rng, 12);
    for (const auto& jr : f.jumps()) {
      const std::vector<double> anchors = build_sample_times(f, 2, 8);
      // tau(x) realizes position x on the loop of jr: check pairwise
      for (int xa = 1; xa < 8; ++xa)
        for (int xb = xa + 1; xb < 8; ++xb) {
          // reconstruct anchor times from x_value instead of trusting order
          double ta = -1, tb = -1;
          for (double t : anchors) {
            if (std::abs(f.x_value(jr.time, t) - jr.height * xa / 8.0) < 1e-12 &&
                f.genealogy(jr.time, t).is_ancestor && ta < 0)
              ta = t;
            if (std::abs(f.x_value(jr.time, t) - jr.height * xb / 8.0) < 1e-12 &&
                f.genealogy(jr.time, t).is_ancestor && tb < 0)
              tb = t;
          }
          if (ta < 0 || tb < 0) continue;
          const double expect =
              jr.height * circle_distance(double(xa) / 8.0, double(xb) / 8.0);
          CHECK(d_loop(f, ta, tb) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
  }
}

TEST_CASE("matrix assembly and csv") {
  const Excursion zero = Excursion::zero();
  const DistanceMatrix mz = matrix(zero, MetricKind::loop(), {0.0, 0.5, 1.0});
  CHECK(mz.max_entry() == 0.0);

  const Excursion a = linear_excursion();
  const DistanceMatrix ma =
      matrix(a, MetricKind::loop(), {0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(ma.max_entry() == doctest::Approx(0.5));
  CHECK(ma.at(1, 3) == doctest::Approx(0.5));
  CHECK_THROWS(matrix(a, MetricKind::loop(), {0.0, 0.5}));  // missing the root time
  CHECK(to_csv(ma).substr(0, 1) == "0");
}

TEST_CASE("jump circle check on the fixed loop example") {
  // d_loop between two anchors of the unit loop of A is the circle metric
  const Excursion a = linear_excursion();
  // tau(x) for A: f(t) = 1 - t, so position x is reached at t = 1 - x
  for (int xa = 1; xa < 8; ++xa)
    for (int xb = xa + 1; xb < 8; ++xb) {
      const double ta = 1.0 - double(xa) / 8.0;
      const double tb = 1.0 - double(xb) / 8.0;
      CHECK(d_loop(a, ta, tb) ==
            doctest::Approx(circle_distance(double(xa) / 8.0, double(xb) / 8.0)));
    }
}
