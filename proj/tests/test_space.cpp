#include "vernation/space.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "vernation/experiments.hpp"

using namespace vernation;
using vernation::testing::random_excursion;

TEST_CASE("quotient of the zero excursion is a point") {
  const FiniteSpace x =
      quotient_space(Excursion::zero(), MetricKind::loop(), {0.0, 0.5, 1.0});
  CHECK(x.size() == 1);
  CHECK(x.weight(0) == doctest::Approx(1.0));
  CHECK(x.root == 0);
}

TEST_CASE("loop quotient of the unit loop is a discrete circle") {
  const Excursion a = linear_excursion();
  std::vector<double> times;
  for (int i = 0; i <= 8; ++i) times.push_back(double(i) / 8.0);
  const FiniteSpace x = quotient_space(a, MetricKind::loop(), times);
  CHECK(x.size() == 8);  // 0 and 1 merge
  // adjacent representatives an eighth of the circle apart
  double adj = 1.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) adj = std::min(adj, x.d(i, i + 1));
  CHECK(adj == doctest::Approx(0.125));
  CHECK(diam(x) == doctest::Approx(0.5));
}

TEST_CASE("tree quotient of the tent merges mirror points") {
  const FiniteSpace x = quotient_space(tent_excursion(), MetricKind::tree(),
                                       {0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(x.size() == 3);  // {0,1}, {0.25,0.75}, {0.5}: a path
  CHECK(diam(x) == doctest::Approx(0.5));
  CHECK(x.rep_times[x.root] == doctest::Approx(0.0));  // class of 1 contains 0
}

TEST_CASE("weights count merged samples") {
  const FiniteSpace x = quotient_space(tent_excursion(), MetricKind::tree(),
                                       {0.0, 0.25, 0.5, 0.75, 1.0});
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += x.weight(i);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x.weight(std::size_t(x.root)) == doctest::Approx(0.4));  // 0 and 1 merged
}

TEST_CASE("glue cross distances and shapes") {
  const FiniteSpace seg = segment(1.0, 11);
  const FiniteSpace cir = circle(1.0, 12);
  const FiniteSpace lollipop = glue(seg, cir, 10);
  CHECK(diam(lollipop) == doctest::Approx(1.0 + 0.5));
  for (std::size_t i = 0; i < seg.size(); ++i)
    for (std::size_t j = 0; j < cir.size(); ++j)
      CHECK(lollipop.d(i, seg.size() + j) ==
            doctest::Approx(seg.d(i, 10) + cir.d(cir.root, j)));

  const FiniteSpace with_point = glue(point(), seg, 0);
  CHECK(with_point.size() == seg.size() + 1);
  CHECK(with_point.d(0, 1) == doctest::Approx(0.0));  // coincident extra point

  CHECK_THROWS(glue(seg, cir, 99));
}

TEST_CASE("scale and reference shapes") {
  const FiniteSpace cir = circle(1.0, 100);
  CHECK(diam(cir) == doctest::Approx(0.5));
  CHECK(diam(segment(0.5, 51)) == doctest::Approx(0.5));
  const FiniteSpace two = scale(cir, 2.0);
  CHECK(diam(two) == doctest::Approx(1.0));
  const FiniteSpace same = scale(cir, 1.0);
  for (std::size_t i = 0; i < cir.size(); ++i)
    for (std::size_t j = 0; j < cir.size(); ++j) CHECK(same.d(i, j) == cir.d(i, j));
}

TEST_CASE("homogeneity lifts to quotient spaces") {
  Rng rng({20260810, 41});
  for (int rep = 0; rep < 5; ++rep) {
    const Excursion f = random_excursion(rng, 10);
    const double alpha = 0.5 + rng.real01();
    std::vector<double> times = build_sample_times(f, 32, 4);
    const FiniteSpace a = quotient_space(f, MetricKind::loop(), times);
    const FiniteSpace b = quotient_space(scale(f, alpha), MetricKind::loop(), times,
                                         1e-9 * alpha);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        CHECK(b.d(i, j) == doctest::Approx(alpha * a.d(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("glue is associative up to relabeling") {
  const FiniteSpace s1 = segment(1.0, 3);
  const FiniteSpace s2 = segment(0.5, 3);
  const FiniteSpace s3 = circle(1.0, 4);
  const FiniteSpace left = glue(glue(s1, s2, 2), s3, 2);
  const FiniteSpace right = glue(s1, glue(s2, s3, 0), 2);
  // glued at the same point of s1 with the chain rooted identically: the
  // multisets of pairwise distances agree
  REQUIRE(left.size() == right.size());
  std::vector<double> dl(left.dist), dr(right.dist);
  std::sort(dl.begin(), dl.end());
  std::sort(dr.begin(), dr.end());
  for (std::size_t i = 0; i < dl.size(); ++i)
    CHECK(dl[i] == doctest::Approx(dr[i]).epsilon(1e-12));
}

TEST_CASE("finite space json round trip") {
  const FiniteSpace x = circle(1.0, 6);
  const FiniteSpace back = finite_space_from_json(to_json(x));
  REQUIRE(back.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) CHECK(back.d(i, j) == x.d(i, j));
  CHECK(back.root == x.root);
}
