#include "vernation/randgen.hpp"

#include <cmath>
#include <map>

#include "doctest.h"
#include "vernation/calculus.hpp"

using namespace vernation;

TEST_CASE("rng determinism") {
  Rng a({42, 7}), b({42, 7}), c({42, 8});
  for (int i = 0; i < 100; ++i) CHECK(a.u64() == b.u64());
  bool differs = false;
  for (int i = 0; i < 100; ++i) differs = differs || (a.u64() != c.u64());
  CHECK(differs);
}

TEST_CASE("random_plane_tree basics") {
  CHECK(random_plane_tree(1, OffspringLaw::geometric(0.5), {1, 0}).child_counts ==
        std::vector<int>{0});
  for (int rep = 0; rep < 20; ++rep) {
    const PlaneTree t = random_plane_tree(37, OffspringLaw::geometric(0.3),
                                           {std::uint64_t(rep), 1});
    CHECK(t.size() == 37);  // parse_tree validated inside
  }
  const PlaneTree s1 = random_plane_tree(25, OffspringLaw::stable_tail(1.5), {9, 2});
  const PlaneTree s2 = random_plane_tree(25, OffspringLaw::stable_tail(1.5), {9, 2});
  CHECK(s1.child_counts == s2.child_counts);  // determinism contract
  CHECK_THROWS(random_plane_tree(4, OffspringLaw::uniform_binary(), {1, 0}));
  CHECK(random_plane_tree(5, OffspringLaw::uniform_binary(), {1, 0}).size() == 5);
}

TEST_CASE("conditioned geometric(1/2) law at n = 3 is uniform on shapes") {
  std::map<std::vector<int>, int> counts;
  for (int rep = 0; rep < 10000; ++rep)
    counts[random_plane_tree(3, OffspringLaw::geometric(0.5), {std::uint64_t(rep), 3})
               .child_counts]++;
  REQUIRE(counts.size() == 2);
  const double freq = double(counts[{2, 0, 0}]) / 10000.0;
  CHECK(freq == doctest::Approx(0.5).epsilon(0.1));
  CHECK(std::abs(freq - 0.5) <= 0.05);
}

TEST_CASE("mapping decomposition on the forced example") {
  // m = [2,3,2,5,4] in 1-based form
  const Mapping m = mapping_from_images({1, 2, 1, 4, 3}, {5, 0});
  CHECK(m.cyclic == std::vector<char>{0, 1, 1, 1, 1});
  REQUIRE(m.basins.size() == 2);
  // the two basins partition {0,1,2} and {3,4} regardless of sample order
  std::vector<std::vector<int>> expected = {{0, 1, 2}, {3, 4}};
  for (auto& basin : expected) std::sort(basin.begin(), basin.end());
  std::vector<std::vector<int>> got = m.basins;
  for (auto& basin : got) std::sort(basin.begin(), basin.end());
  CHECK((got[0] == expected[0] || got[0] == expected[1]));
  CHECK((got[1] == expected[0] || got[1] == expected[1]));

  // identity mapping: n cycles, n basins
  const Mapping id = mapping_from_images({0, 1, 2, 3}, {6, 0});
  CHECK(id.basins.size() == 4);
  for (char c : id.cyclic) CHECK(c == 1);

  // constant mapping: one basin, single cyclic point
  const Mapping cst = mapping_from_images({0, 0, 0, 0, 0}, {7, 0});
  CHECK(cst.basins.size() == 1);
  CHECK(cst.cycles[0] == std::vector<int>{0});
  CHECK(int(cst.basins[0].size()) == 5);
}

TEST_CASE("mapping invariants on random instances") {
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + int(Rng({std::uint64_t(rep), 99}).below(120));
    const Mapping m = random_mapping(n, {std::uint64_t(rep), 4});
    // basins partition [n]
    std::vector<int> seen(n, 0);
    for (const auto& basin : m.basins)
      for (int v : basin) seen[v]++;
    for (int c : seen) CHECK(c == 1);
    // cycles closed under m, and match brute-force iteration
    for (const auto& cyc : m.cycles)
      for (int v : cyc) {
        CHECK(m.cyclic[v] == 1);
        bool in = false;
        for (int w : cyc) in = in || (m.images[v] == w);
        CHECK(in);
      }
    for (int v = 0; v < n; ++v) {
      int u = v;
      for (int k = 0; k < n; ++k) u = m.images[u];
      // u is now on a cycle; v cyclic iff the iterate returns
      int w = u;
      bool returns = false;
      for (int k = 0; k < n; ++k) {
        w = m.images[w];
        if (w == v) returns = true;
      }
      CHECK(bool(m.cyclic[v]) == returns);
    }
  }
}

TEST_CASE("mapping processes and basin excursions") {
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5 + int(Rng({std::uint64_t(rep), 98}).below(80));
    const Mapping m = random_mapping(n, {std::uint64_t(rep), 5});
    const MappingProcesses mp = mapping_processes(m);
    CHECK(int(mp.height.size()) == n + 1);
    CHECK(int(mp.contour.size()) == 2 * n + 1);
    CHECK(mp.marks.back() == n);
    for (std::size_t j = 0; j + 1 < mp.marks.size(); ++j) {
      CHECK(mp.contour[2 * mp.marks[j + 1]] == 0);  // C_{2Z_j} = 0
      // l' increments count the cyclic points of the basin
      const double inc = mp.ell_prime[2 * mp.marks[j + 1]] - mp.ell_prime[2 * mp.marks[j]];
      CHECK(inc == doctest::Approx(double(m.cycles[j].size())));
      // each f_j^n is a valid excursion with a unique jump at 0
      const Excursion& f = mp.basin_excursions[j];
      CHECK(f.jumps().size() == 1);
      CHECK(f.jumps()[0].time == 0.0);
      CHECK(f.jump_at(0.0) == doctest::Approx(double(m.cycles[j].size()) / 2.0));
    }
  }
}

TEST_CASE("mapping basin sizes match the marks on the forced example") {
  const Mapping m = mapping_from_images({1, 2, 1, 4, 3}, {5, 0});
  const MappingProcesses mp = mapping_processes(m);
  // Z differences are the basin sizes {3,2} in sample order
  std::vector<long long> sizes;
  for (std::size_t j = 0; j + 1 < mp.marks.size(); ++j)
    sizes.push_back(mp.marks[j + 1] - mp.marks[j]);
  std::vector<long long> sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<long long>{2, 3});
  for (std::size_t j = 0; j < mp.basin_excursions.size(); ++j)
    CHECK(mp.basin_excursions[j].jump_at(0.0) == doctest::Approx(1.0));  // cycles of size 2
}

TEST_CASE("walk excursions") {
  const Excursion tent2 = walk_excursion(2, StepLaw::pm1(), {11, 0});
  CHECK(tent2.sup() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(classify(tent2) == ExcursionClass::Continuous);

  for (int rep = 0; rep < 5; ++rep) {
    const Excursion f = walk_excursion(64, StepLaw::pm1(), {std::uint64_t(rep), 6});
    CHECK(f.jumps().empty());
    CHECK(classify(f) == ExcursionClass::Continuous);
    const Excursion g =
        walk_excursion(64, StepLaw::stable_tail(1.4), {std::uint64_t(rep), 7});
    CHECK(classify(g) == ExcursionClass::Pjg);
  }
  CHECK_THROWS(walk_excursion(7, StepLaw::pm1(), {1, 0}));
}
