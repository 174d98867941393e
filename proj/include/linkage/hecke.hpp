#pragma once

#include <future>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "linkage/affine.hpp"
#include "linkage/laurent.hpp"

namespace linkage {

// Sparse module element: basis index -> Laurent polynomial. Deterministic
// iteration order via the element ordering.
using ModuleElt = std::map<AffineElt, Laurent>;

// Hecke algebra of (W,S) over Z[v,v^{-1}] in Soergel's normalization
// (H_s^2 = (v^{-1}-v)H_s + 1, C_s = H_s + v), together with its antispherical
// right module on the standard basis (N_w, w in fW). Canonical bases are
// memoized; concurrent lookups of an element being computed wait for the
// first computation instead of duplicating it.
class Hecke {
 public:
  explicit Hecke(std::shared_ptr<const Weyl> w) : w_(std::move(w)) {}

  const Weyl& weyl() const { return *w_; }

  // right multiplications
  ModuleElt mul_Cs_hecke(const ModuleElt& x, int s) const;
  ModuleElt mul_Hs_hecke(const ModuleElt& x, int s) const;
  ModuleElt mul_Hs_inv_hecke(const ModuleElt& x, int s) const;
  ModuleElt asph_act_Cs(const ModuleElt& x, int s) const;
  ModuleElt asph_act_Hs(const ModuleElt& x, int s) const;
  ModuleElt asph_act_Hs_inv(const ModuleElt& x, int s) const;

  // bar involutions (v -> v^{-1}, H_w -> H_{w^{-1}}^{-1}); the antispherical
  // bar goes through N_e H_w = N_w
  ModuleElt hecke_bar(const ModuleElt& x) const;
  ModuleElt asph_bar(const ModuleElt& x) const;

  std::shared_ptr<const ModuleElt> canonical_H(const AffineElt& y) const;
  std::shared_ptr<const ModuleElt> canonical_N(const AffineElt& y) const;  // y in fW

  Laurent h_poly(const AffineElt& x, const AffineElt& y) const;
  Laurent n_poly(const AffineElt& x, const AffineElt& y) const;  // 0 unless both in fW
  long long n_at_one(const AffineElt& x, const AffineElt& y) const;

  // sum_{z in W_0} (-1)^{l(z)} h_{vz,u}(1) == n_{v^{-1},u^{-1}}(1), for u, v
  // minimal in uW_0, vW_0
  bool h_vs_n_identity(const AffineElt& u, const AffineElt& v) const;

  bool in_fW(const AffineElt& x) const { return w_->is_min_in_W0w(x); }

  // cache snapshot / restore for the persistence layer
  struct CacheRecord {
    char basis;  // 'H' or 'N'
    std::vector<int> y;
    std::vector<std::pair<std::vector<int>, Laurent>> entries;
  };
  std::vector<CacheRecord> export_cache() const;
  void import_cache(const std::vector<CacheRecord>& records);
  size_t cache_size() const;

 private:
  std::shared_ptr<const Weyl> w_;

  using Slot = std::shared_future<std::shared_ptr<const ModuleElt>>;
  mutable std::shared_mutex mtx_;
  mutable std::map<AffineElt, Slot> hcache_;
  mutable std::map<AffineElt, Slot> ncache_;

  std::shared_ptr<const ModuleElt> canonical(const AffineElt& y, bool antispherical) const;
  std::shared_ptr<const ModuleElt> compute_canonical(const AffineElt& y, bool antispherical) const;
};

}  // namespace linkage
