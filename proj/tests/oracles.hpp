#pragma once

// Brute-force oracles shared between the unit tests and the acceptance run.

#include <set>

#include "linkage/engine.hpp"

namespace linkage::oracles {

// Grows the dot-action orbit of W_0 together with translations by
// ell^{r+1} ZR^vee to a fixpoint inside a padded coordinate box, then keeps
// the dominant members within the height region. Independent of block_of:
// this walks generators instead of solving the coset membership.
inline std::set<Coweight> orbit_fixpoint(const Weyl& w, const Coweight& lambda, long long ell,
                                         long long r, int radius) {
  const RootSystem& rs = w.rs();
  long long step = 1;
  for (long long i = 0; i <= r; ++i) step *= ell;
  long long bound = radius + 1;
  for (int k = 0; k < rs.num_positive_roots(); ++k)
    for (int i = 0; i < rs.rank(); ++i)
      bound = std::max(bound, radius + step * std::abs(rs.coroot(k)[i]) + 2);
  auto inside = [&](const Coweight& x) {
    for (long long c : x)
      if (c > bound || c < -bound) return false;
    return true;
  };
  std::set<Coweight> seen;
  std::vector<Coweight> frontier;
  Coweight x0 = lambda;
  for (auto& c : x0) c += 1;
  seen.insert(x0);
  frontier.push_back(x0);
  while (!frontier.empty()) {
    std::vector<Coweight> next;
    for (const Coweight& x : frontier) {
      std::vector<Coweight> images;
      for (int i = 0; i < rs.rank(); ++i) images.push_back(w.act(w.generators()[i], x, 1));
      for (int i = 0; i < rs.rank(); ++i) {
        const Coweight& av = rs.coroot(rs.simple_root_index(i));
        Coweight up = x, down = x;
        for (int j = 0; j < rs.rank(); ++j) {
          up[j] += step * av[j];
          down[j] -= step * av[j];
        }
        images.push_back(up);
        images.push_back(down);
      }
      for (Coweight& y : images)
        if (inside(y) && seen.insert(y).second) next.push_back(y);
    }
    frontier = std::move(next);
  }
  std::set<Coweight> out;
  for (const Coweight& x : seen) {
    Coweight mu = x;
    for (auto& c : mu) c -= 1;
    if (!rs.is_dominant(mu)) continue;
    bool within = true;
    for (auto& f : rs.factors())
      if (rs.pairing_root(mu, f.highest_root) > radius) within = false;
    if (within) out.insert(mu);
  }
  return out;
}

}  // namespace linkage::oracles
