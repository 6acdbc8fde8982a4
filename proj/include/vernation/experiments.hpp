#pragma once

#include <string>
#include <vector>

#include "vernation/excursion.hpp"
#include "vernation/randgen.hpp"
#include "vernation/space.hpp"

namespace vernation {

struct ExperimentParams {
  RngSeed seed;
  std::vector<int> sizes;       // per-experiment n grid (defaults applied per name)
  int samples = 256;            // base sampling resolution
  double tol = 1e-9;
  double alpha = 1.5;           // stable tail exponent for the invariance runs
  double coefficient = 2.0;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool pass = true;
  double runtime_seconds = 0.0;
  std::vector<std::string> notes;

  std::string to_json() const;
  std::string to_csv() const;
};

ExperimentReport run_experiment(const std::string& name, const ExperimentParams& params);

// The deterministic families the experiments are built on, exposed so the
// acceptance suite can pin its criteria to the same objects.
Excursion chain_excursion(int n);    // n loops of length 1/n back to back
Excursion bouquet_excursion(int n);  // n loops of length 1/2n at one point
Excursion two_jump_excursion();      // mixed excursion with jumps 0.3 and 0.4
Excursion tent_excursion();          // continuous tent of height 1/2
Excursion linear_excursion();        // f(t) = 1 - t

// Loop(tau) as a pointed weighted finite metric space (uniform weights on
// vertices, rooted at the tree root, rep times = first visits).
FiniteSpace loop_space(const PlaneTree& tree);

// GHP upper bound between (1/a) Loop(tau) and the sampled quotient of
// w(tau)/a, anchored at first-visit times.
double looptree_ghp_bound(const PlaneTree& tree, double a, int loop_anchors = 8);

}  // namespace vernation
