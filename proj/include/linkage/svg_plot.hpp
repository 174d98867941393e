#pragma once

#include <optional>
#include <string>

#include "linkage/engine.hpp"

namespace linkage {

struct PlotOptions {
  long long ell = 1;
  int window = 4;  // pairings shown up to window * ell
  std::optional<std::pair<Coweight, Coweight>> chain;  // shade a linking chain
};

// Standalone SVG of the rank-2 hyperplane arrangement: thin gray hyperplanes,
// thick dominant-cone walls, dashed ell*rho-shifted walls, and optionally the
// alcoves and facet orbit of a linking chain (gray fill, red facets).
// Byte-deterministic for a fixed request. Throws on rank != 2.
std::string render_svg(const Engine& e, const PlotOptions& opt);

}  // namespace linkage
