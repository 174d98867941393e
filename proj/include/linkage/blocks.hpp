#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkage/periodic.hpp"

namespace linkage {

struct TheoryConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DifferentBlocksError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlockResult {
  std::vector<Coweight> weights;       // sorted, truncated to the region
  std::vector<long long> r_values;     // per factor, r(lambda_i + rho_i)
  bool contains_lambda = false;        // region held lambda itself
};

struct ChainResult {
  std::vector<Coweight> weights;                        // lambda = first ... last = lambda'
  std::vector<Coweight> witnesses;                      // one per consecutive pair
  std::vector<std::pair<long long, long long>> values;  // verified n(1) pairs (reduced level)
  long long bound = 0;
  bool certified = false;
};

struct ClosurePartition {
  std::vector<AffineElt> members;   // fW^g inside the region, deterministic order
  std::vector<int> closure_class;   // union-find over witnessed relations
  std::vector<int> formula_class;   // dilated-coset formula
  bool certified = false;
};

// Block decomposition of dominant coweights: the dilated-orbit formula, the
// facet-level equivalence closure, and explicit linking chains with the
// hat-descent length bound.
class Blocks {
 public:
  Blocks(std::shared_ptr<const Weyl> w, std::shared_ptr<Hecke> h);

  const Weyl& weyl() const { return *w_; }

  // largest r with lambda in ell^r X^vee; throws on the zero coweight
  static long long r_of(const Coweight& lambda, long long ell);
  static int delta_of(const Coweight& mu, long long ell) { return r_of(mu, ell) == 0 ? 1 : 0; }

  // ell admissible for the quantum-group formula; throws TheoryConstraintError
  static void check_quantum_constraints(const RootSystem& rs, long long ell);

  struct FacetContext {
    long long ell = 0;
    Coweight rep;         // orbit representative of lambda + rho in closure(a_ell)
    Facet unit_facet;     // facet of rep / ell for the unit arrangement
    std::vector<int> Sg;  // stabilizer generators
    AffineElt witness;    // the fW^g element with witness box_ell rep = lambda + rho
    bool special = false;
    long long r = 0;      // r(lambda + rho)
  };
  FacetContext facet_context(const Coweight& lambda, long long ell) const;

  // generating relation of the facet equivalence: nonvanishing n(1) in either
  // direction between two fW^g elements
  bool relation_edge(const AffineElt& w, const AffineElt& wp, const Facet& g) const;

  BlockResult block_of(const Coweight& lambda, long long ell, bool quantum, int radius) const;
  bool same_orbit(const Coweight& a, const Coweight& b, long long ell) const;
  bool same_block(const Coweight& a, const Coweight& b, long long ell, bool quantum) const;

  ChainResult chain_between(const Coweight& lambda, const Coweight& lambdap, long long ell,
                            bool quantum = false) const;

  ClosurePartition closure_oracle(const Facet& g, long long ell, int radius) const;

  // unit-scale chain core: elements of fW^g from w to the base representative
  // near rho^vee + a_1, with a common witness per consecutive pair
  struct CoreChain {
    std::vector<AffineElt> elements;
    std::vector<AffineElt> witnesses;
    long long bound_terms = 0;  // d(hat(A_w) - rho^vee)
  };
  CoreChain chain_core(const AffineElt& w, const Facet& g) const;

 private:
  std::shared_ptr<const Weyl> w_;
  std::shared_ptr<Hecke> h_;
  std::vector<RootSystem> factor_rs_;
  std::vector<std::shared_ptr<const Weyl>> factor_weyl_;
  std::vector<std::shared_ptr<Hecke>> factor_hecke_;
  std::vector<std::shared_ptr<Blocks>> factor_blocks_;  // empty for irreducible

  bool irreducible() const { return factor_rs_.size() == 1 && w_->rs().factors().size() == 1; }
  ChainResult chain_irreducible(const Coweight& lambda, const Coweight& lambdap, long long ell) const;
  std::vector<Coweight> orbit_weights_factor(size_t f, const Coweight& x, long long step,
                                             int radius) const;
};

}  // namespace linkage
