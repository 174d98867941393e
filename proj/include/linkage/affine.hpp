#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkage/root_data.hpp"

namespace linkage {

// Element of the extended affine Weyl group, stored as the affine map
// x -> M x + n*b when acting at dilation scale n. The linear part M is a
// finite-Weyl-group matrix on coweight coordinates; b lies in X^vee
// (membership in the non-extended group W means b in ZR^vee).
struct AffineElt {
  std::vector<long long> m;  // rank x rank, row-major
  Coweight b;

  int rank() const { return static_cast<int>(b.size()); }
  long long mat(int i, int j) const { return m[static_cast<size_t>(i) * b.size() + j]; }

  friend bool operator==(const AffineElt& x, const AffineElt& y) { return x.b == y.b && x.m == y.m; }
  friend bool operator<(const AffineElt& x, const AffineElt& y) {
    if (x.b != y.b) return x.b < y.b;
    return x.m < y.m;
  }
};

struct AffineEltHash {
  size_t operator()(const AffineElt& e) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](long long v) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (auto v : e.b) mix(v);
    for (auto v : e.m) mix(v);
    return h;
  }
};

// Alcove as its bound vector: n[k]-1 < <x, alpha_k> < n[k] on the alcove,
// indexed by the root system's positive-root order.
struct Alcove {
  std::vector<int> n;
  friend bool operator==(const Alcove& a, const Alcove& b) { return a.n == b.n; }
  friend bool operator!=(const Alcove& a, const Alcove& b) { return !(a == b); }
  friend bool operator<(const Alcove& a, const Alcove& b) { return a.n < b.n; }
};

struct AlcoveHash {
  size_t operator()(const Alcove& a) const {
    size_t h = 1469598103934665603ull;
    for (auto v : a.n) h = (h ^ static_cast<size_t>(v + 1000003)) * 1099511628211ull;
    return h;
  }
};

// Facet: partition of the positive roots into pinned pairings (eq, with the
// integer value) and open interval pairings (with the alcove-style bound).
struct Facet {
  std::vector<char> is_eq;  // per positive root
  std::vector<int> val;     // eq value if is_eq, else interval bound n

  friend bool operator==(const Facet& a, const Facet& b) { return a.is_eq == b.is_eq && a.val == b.val; }
  friend bool operator!=(const Facet& a, const Facet& b) { return !(a == b); }
  friend bool operator<(const Facet& a, const Facet& b) {
    if (a.is_eq != b.is_eq) return a.is_eq < b.is_eq;
    return a.val < b.val;
  }
  bool is_alcove() const {
    for (char c : is_eq)
      if (c) return false;
    return true;
  }
};

enum class Cert { True, False, Indeterminate };

// Affine Weyl group machinery over a fixed root system: alcove bijection,
// lengths, Bruhat and periodic orders, coset representatives, facet
// stabilizers, hat/check. Pure functions over immutable data; the memo
// tables support concurrent readers.
class Weyl {
 public:
  explicit Weyl(RootSystem rs);

  const RootSystem& rs() const { return rs_; }

  // -- group elements ------------------------------------------------------
  AffineElt identity() const;
  // 0..rank-1 the finite simple reflections, then one affine generator per
  // irreducible factor, in factor order.
  const std::vector<AffineElt>& generators() const { return gens_; }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  bool is_finite_generator(int s) const { return s < rs_.rank(); }

  AffineElt compose(const AffineElt& x, const AffineElt& y) const;  // x then applied after y: (x*y)(p)=x(y(p))
  AffineElt inverse(const AffineElt& x) const;
  AffineElt product_of_word(const std::vector<int>& word) const;
  AffineElt translation(const Coweight& mu) const;

  bool in_W(const AffineElt& x) const;  // translation part in ZR^vee
  bool is_translation(const AffineElt& x) const;

  QPoint act(const AffineElt& g, const QPoint& p, long long scale) const;
  Coweight act(const AffineElt& g, const Coweight& p, long long scale) const;
  // w dot_l mu = w box_l (mu + rho^vee) - rho^vee
  Coweight act_dot(const AffineElt& g, const Coweight& mu, long long ell) const;

  // -- alcoves -------------------------------------------------------------
  Alcove fundamental_alcove() const;
  Alcove alcove_of(const AffineElt& w) const;  // w box_1 a_1
  AffineElt element_of(const Alcove& a) const;  // inverse bijection; requires an actual alcove of the W-orbit
  Alcove act_alcove(const AffineElt& g, const Alcove& a) const;  // left action, unit scale
  Alcove translate_alcove(const Alcove& a, const Coweight& mu) const;
  Alcove right_mult(const Alcove& a, int s) const;  // A -> As

  int d(const Alcove& a) const;  // separating hyperplane count from a_1
  int length(const AffineElt& w) const;
  bool is_dominant(const Alcove& a) const;

  std::vector<int> reduced_word(const AffineElt& w) const;
  std::vector<int> right_descents(const AffineElt& w) const;
  std::vector<int> left_descents(const AffineElt& w) const;
  bool bruhat_leq(const AffineElt& x, const AffineElt& y) const;

  // Periodic order. The wall between adjacent a and a_s is crossed upward if
  // a_s sits on the generic-dominant side E^+_H.
  bool upward(const Alcove& a, const Alcove& as) const;  // a and as adjacent
  // image of a under the affine reflection through {<x, alpha_root> = level}
  Alcove reflect_alcove(const Alcove& a, int root, long long level) const;
  Cert periodic_leq(const Alcove& a, const Alcove& b, int radius) const;

  // -- boxes and hat -------------------------------------------------------
  Coweight box_point(const Alcove& a) const;  // unique lambda with A in Pi_lambda
  bool in_box(const QPoint& p, const Coweight& lambda) const;
  Alcove check_op(const Alcove& a) const;  // A = lambda+B |-> lambda + w0 B
  Alcove hat_op(const Alcove& a) const;    // inverse: lambda + 2rho^vee + w0 B
  AffineElt w_special(const Coweight& v) const;  // t_v w_0 t_{-v}
  const AffineElt& w0() const { return w0_; }

  // -- facets --------------------------------------------------------------
  Facet facet_of(const QPoint& p) const;
  Facet act_facet(const AffineElt& g, const Facet& f) const;
  Facet alcove_facet(const Alcove& a) const;
  Facet translate_facet(const Facet& f, const Coweight& mu) const;
  bool facet_in_closure_of_fundamental(const Facet& f) const;
  bool facet_dominant(const Facet& f) const;          // inside the open dominant cone
  QPoint facet_point(const Facet& f) const;           // exact interior point (facets of closure(a_1) only)
  int facet_dimension(const Facet& f) const;
  bool is_special(const Facet& f) const;              // dim 0 with lattice point
  std::optional<Coweight> facet_lattice_point(const Facet& f) const;
  // Alcove containing f in its closure, on the lower side of every pinned
  // hyperplane; this is the minimal alcove of its W_f-coset for the periodic
  // order.
  Alcove min_alcove_at(const Facet& f) const;
  Facet facet_in_closure(const Alcove& a, const Facet& g) const;  // element_of(a) box_1 g

  // Stabilizer of a facet inside closure(a_1): the standard parabolic on the
  // generators fixing it.
  struct Parabolic {
    std::vector<int> gens;               // indices into generators()
    std::vector<AffineElt> elements;     // full enumeration
    AffineElt longest;                   // w_g
  };
  std::vector<int> facet_fixing_generators(const Facet& g) const;
  Parabolic stabilizer(const Facet& g) const;

  Facet hat_facet(const Facet& h, const Facet& g) const;  // h in A_g

  // Unique point of W box_n lambda in closure(a_n), plus witness w with
  // w box_n rep = lambda.
  struct OrbitRep { Coweight rep; AffineElt witness; };
  OrbitRep orbit_representative(const Coweight& lambda, long long n) const;

  // -- coset representatives ----------------------------------------------
  bool is_min_in_W0w(const AffineElt& w) const;  // membership in fW
  AffineElt max_in_wWg(const AffineElt& w, const std::vector<int>& Sg) const;
  AffineElt min_in_wWg(const AffineElt& w, const std::vector<int>& Sg) const;
  bool is_max_in_wWg(const AffineElt& w, const std::vector<int>& Sg) const;
  bool is_in_fWg(const AffineElt& w, const std::vector<int>& Sg) const;

  // -- finite Weyl group ----------------------------------------------------
  const std::vector<AffineElt>& finite_weyl_elements() const;  // enumerated, with a size cap
  int finite_length(const AffineElt& w) const;                 // length of a W_0 element

  // -- extended group -------------------------------------------------------
  bool length_zero(const AffineElt& w) const;
  std::pair<AffineElt, AffineElt> omega_decompose(const AffineElt& w) const;  // (omega, w') with w = omega*w'

  // -- regions ---------------------------------------------------------------
  std::vector<std::pair<AffineElt, Alcove>> alcoves_up_to(int radius) const;  // sorted lexicographically on bounds
  std::vector<std::pair<AffineElt, Alcove>> dominant_alcoves_up_to(int radius) const;
  std::vector<Coweight> dominant_weights_up_to(int radius) const;  // max pairing with highest roots <= radius
  std::vector<Facet> g_facets_up_to(const Facet& g, int radius) const;

 private:
  RootSystem rs_;
  std::vector<AffineElt> gens_;
  std::vector<AffineElt> refl_;  // linear reflection per positive root
  AffineElt w0_;
  std::map<RootVec, int> root_index_;  // positive roots only
  mutable std::shared_mutex mtx_;
  mutable std::unordered_map<AffineElt, int, AffineEltHash> length_cache_;
  mutable std::unordered_map<AffineElt, Alcove, AffineEltHash> alcove_cache_;
  mutable std::map<std::pair<AffineElt, AffineElt>, bool> bruhat_cache_;
  mutable std::vector<AffineElt> w0_elements_;
  mutable std::once_flag w0_enum_once_;

  // functional of x |-> <M x, beta> as a signed positive root plus nothing
  struct PulledRoot { int index; int sign; };
  PulledRoot pull_root(const AffineElt& g, int root_index) const;
};

std::string word_to_string(const std::vector<int>& word);

}  // namespace linkage
