#pragma once

#include <string>

#include "vernation/combinatorics.hpp"
#include "vernation/excursion.hpp"

namespace vernation {

// Static SVG plots. Excursions are drawn as their graphs with dashed jump
// markers; looptrees and vernation trees by recursive tangent-circle
// placement along the genealogy, falling back to a radial layout (with a
// warning in the document metadata) when circles collide.
std::string render_excursion(const Excursion& f);
std::string render_looptree(const PlaneTree& tree);
std::string render_vernation(const Excursion& f, double coefficient = 2.0);

}  // namespace vernation
