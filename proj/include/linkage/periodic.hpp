#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "linkage/hecke.hpp"

namespace linkage {

// Periodic-module element: alcove -> Laurent polynomial.
using PeriodicElt = std::map<Alcove, Laurent>;

struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The alcove-indexed periodic module: Hecke action, E_lambda generators,
// star action, alt/res, and the periodic polynomials p_{B,A} obtained as the
// stable value of n under deep dominant translation. Non-stabilization
// within the step budget raises, never returns a guess.
class Periodic {
 public:
  Periodic(std::shared_ptr<const Weyl> w, std::shared_ptr<Hecke> h)
      : w_(std::move(w)), h_(std::move(h)) {}

  const Weyl& weyl() const { return *w_; }
  Hecke& hecke() const { return *h_; }

  PeriodicElt act_Cs(const PeriodicElt& x, int s) const;
  PeriodicElt E_lambda(const Coweight& lam) const;

  // x * A := x lambda + B for A = lambda + B, B in the fundamental box;
  // x must be a finite Weyl element
  Alcove star(const AffineElt& x, const Alcove& a) const;
  // signed list ((x*A, (-1)^{l(x)}), x in W_0), deterministic order
  std::vector<std::pair<Alcove, int>> alt_terms(const Alcove& a) const;

  // kills non-dominant alcoves, keeps N_A for dominant ones
  ModuleElt res(const PeriodicElt& x) const;

  Laurent p_poly(const Alcove& b, const Alcove& a) const;
  long long p_at_one(const Alcove& b, const Alcove& a) const { return p_poly(b, a).eval_one(); }

  // S_A = { wC : w in W_v, C <= A - v as dominant alcoves } for v the box
  // point of A; radius guards the down-set enumeration
  std::vector<Alcove> support_S_A(const Alcove& a, int radius) const;

  // res(alt underline-P_A) assembled from stabilized p values; the Soergel
  // identity states this equals canonical_N of A for A inside rho + C_0^+
  ModuleElt res_alt_P(const Alcove& a) const;

  int stabilization_budget() const { return budget_; }

 private:
  std::shared_ptr<const Weyl> w_;
  std::shared_ptr<Hecke> h_;
  int budget_ = 8;
  mutable std::shared_mutex mtx_;
  mutable std::map<std::pair<Alcove, Alcove>, Laurent> pcache_;

  Laurent stabilized_n(const Alcove& b, const Alcove& a) const;
};

}  // namespace linkage
