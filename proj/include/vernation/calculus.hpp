#pragma once

#include "vernation/excursion.hpp"

namespace vernation {

enum class ExcursionClass { Continuous, Pjg, Mixed };

struct Decomposition {
  Excursion continuous_part;  // f - Jf
  Excursion pjg_part;         // Jf
};

// Jf(t) = sum over jumps r <= t of x_r^t, computed as f(t) - d_tree(f,t,1);
// the defining sum is kept as a test oracle.
Excursion j_transform(const Excursion& f);

// J^eps f: the same sum restricted to jumps of height >= eps.
Excursion j_eps(const Excursion& f, double eps);

Decomposition decompose(const Excursion& f);

ExcursionClass classify(const Excursion& f, double tol = 1e-9);
const char* to_string(ExcursionClass c);

// f - Jf + J^eps f; satisfies J(result) = J^eps f.
Excursion regularize(const Excursion& f, double eps);

// Branching decomposition at u -< v with f(u-) = f(v-): g flattens f on
// [u,v) and h is the rescaled sub-excursion on [u,v].
struct BranchSplit {
  Excursion outer;  // g
  Excursion inner;  // h
};
BranchSplit branch_split(const Excursion& f, double u, double v, double tol = 1e-9);

}  // namespace vernation
