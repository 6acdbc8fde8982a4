#pragma once

#include <algorithm>
#include <vector>

#include "vernation/excursion.hpp"
#include "vernation/randgen.hpp"

namespace vernation::testing {

// Seeded random piecewise-linear excursion with at most max_bps
// breakpoints; roughly half the breakpoints carry jumps.
inline Excursion random_excursion(Rng& rng, int max_bps = 20) {
  const int m = 2 + int(rng.below(std::uint64_t(std::max(1, max_bps - 1))));
  std::vector<double> times{0.0, 1.0};
  while (int(times.size()) < m) {
    const double t = rng.real01();
    if (t > 0.0 && t < 1.0) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<Breakpoint> bps;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const bool last = i + 1 == times.size();
    const double left = (i == 0 || last) ? 0.0 : rng.real01();
    const double jump = last ? 0.0 : (rng.below(2) ? rng.real01() * 0.8 : 0.0);
    bps.push_back({times[i], left, left + jump});
  }
  return Excursion::make(std::move(bps));
}

// The worked three-piece example: rise to 1/4, jump to 3/4, descend to 0.
inline Excursion mixed_excursion() {
  return Excursion::make({{0.0, 0.0, 0.0}, {0.25, 0.25, 0.75}, {1.0, 0.0, 0.0}});
}

}  // namespace vernation::testing
