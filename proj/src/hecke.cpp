#include "linkage/hecke.hpp"

#include <algorithm>
#include <stdexcept>

namespace linkage {

namespace {

void add_scaled(ModuleElt& dst, const AffineElt& key, const Laurent& p) {
  if (p.is_zero()) return;
  auto it = dst.find(key);
  if (it == dst.end()) {
    dst.emplace(key, p);
  } else {
    it->second += p;
    if (it->second.is_zero()) dst.erase(it);
  }
}

const Laurent kV = Laurent::monomial(1, 1);
const Laurent kVinv = Laurent::monomial(1, -1);

}  // namespace

ModuleElt Hecke::mul_Cs_hecke(const ModuleElt& x, int s) const {
  const AffineElt& g = w_->generators().at(static_cast<size_t>(s));
  ModuleElt out;
  for (auto& [e, p] : x) {
    AffineElt es = w_->compose(e, g);
    add_scaled(out, es, p);
    add_scaled(out, e, p * (w_->length(es) > w_->length(e) ? kV : kVinv));
  }
  return out;
}

ModuleElt Hecke::mul_Hs_hecke(const ModuleElt& x, int s) const {
  // H_x H_s = H_{xs} (up) or H_{xs} + (v^{-1}-v) H_x (down)
  const AffineElt& g = w_->generators().at(static_cast<size_t>(s));
  ModuleElt out;
  Laurent vdiff = kVinv - kV;
  for (auto& [e, p] : x) {
    AffineElt es = w_->compose(e, g);
    add_scaled(out, es, p);
    if (w_->length(es) < w_->length(e)) add_scaled(out, e, p * vdiff);
  }
  return out;
}

ModuleElt Hecke::mul_Hs_inv_hecke(const ModuleElt& x, int s) const {
  // H_s^{-1} = H_s + (v - v^{-1})
  ModuleElt out = mul_Hs_hecke(x, s);
  Laurent vdiff = kV - kVinv;
  for (auto& [e, p] : x) add_scaled(out, e, p * vdiff);
  return out;
}

ModuleElt Hecke::asph_act_Cs(const ModuleElt& x, int s) const {
  const AffineElt& g = w_->generators().at(static_cast<size_t>(s));
  ModuleElt out;
  for (auto& [e, p] : x) {
    AffineElt es = w_->compose(e, g);
    if (!w_->is_min_in_W0w(es)) continue;  // N_w C_s = 0 when ws leaves fW
    add_scaled(out, es, p);
    add_scaled(out, e, p * (w_->length(es) > w_->length(e) ? kV : kVinv));
  }
  return out;
}

ModuleElt Hecke::asph_act_Hs(const ModuleElt& x, int s) const {
  // N C_s - v N
  ModuleElt out = asph_act_Cs(x, s);
  for (auto& [e, p] : x) add_scaled(out, e, p * (Laurent(0) - kV));
  return out;
}

ModuleElt Hecke::asph_act_Hs_inv(const ModuleElt& x, int s) const {
  ModuleElt out = asph_act_Hs(x, s);
  Laurent vdiff = kV - kVinv;
  for (auto& [e, p] : x) add_scaled(out, e, p * vdiff);
  return out;
}

ModuleElt Hecke::hecke_bar(const ModuleElt& x) const {
  ModuleElt out;
  for (auto& [e, p] : x) {
    // bar(H_w) = H_{w^{-1}}^{-1}: multiply inverse generators along the
    // reversed word of w^{-1}, i.e. the word of w itself
    std::vector<int> word = w_->reduced_word(e);
    ModuleElt acc{{w_->identity(), p.bar()}};
    for (int s : word) acc = mul_Hs_inv_hecke(acc, s);
    for (auto& [k, q] : acc) add_scaled(out, k, q);
  }
  return out;
}

ModuleElt Hecke::asph_bar(const ModuleElt& x) const {
  ModuleElt out;
  for (auto& [e, p] : x) {
    std::vector<int> word = w_->reduced_word(e);
    ModuleElt acc{{w_->identity(), p.bar()}};
    for (int s : word) acc = asph_act_Hs_inv(acc, s);
    for (auto& [k, q] : acc) add_scaled(out, k, q);
  }
  return out;
}

std::shared_ptr<const ModuleElt> Hecke::canonical(const AffineElt& y, bool antispherical) const {
  auto& cache = antispherical ? ncache_ : hcache_;
  std::promise<std::shared_ptr<const ModuleElt>> promise;
  {
    std::unique_lock lk(mtx_);
    auto it = cache.find(y);
    if (it != cache.end()) {
      Slot slot = it->second;
      lk.unlock();
      return slot.get();
    }
    cache.emplace(y, promise.get_future().share());
  }
  try {
    auto value = compute_canonical(y, antispherical);
    promise.set_value(value);
    return value;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::unique_lock lk(mtx_);
    cache.erase(y);
    throw;
  }
}

std::shared_ptr<const ModuleElt> Hecke::compute_canonical(const AffineElt& y, bool antispherical) const {
  const int ly = w_->length(y);
  if (antispherical && !w_->is_min_in_W0w(y))
    throw std::invalid_argument("canonical_N: element not in fW");
  if (ly == 0) return std::make_shared<ModuleElt>(ModuleElt{{y, Laurent(1)}});

  int s = -1;
  for (int t = 0; t < w_->num_generators(); ++t)
    if (w_->length(w_->compose(y, w_->generators()[t])) < ly) { s = t; break; }
  AffineElt ys = w_->compose(y, w_->generators()[s]);

  ModuleElt cand;
  {
    auto lower = canonical(ys, antispherical);
    cand = antispherical ? asph_act_Cs(*lower, s) : mul_Cs_hecke(*lower, s);
  }

  // peel off bar-symmetric corrections, longest support element first
  while (true) {
    const AffineElt* bad = nullptr;
    int badlen = -1;
    for (auto& [e, p] : cand) {
      if (e == y || p.in_v_zpos()) continue;
      int l = w_->length(e);
      if (l > badlen) {
        badlen = l;
        bad = &e;
      }
    }
    if (!bad) break;
    const Laurent& p = cand.at(*bad);
    Laurent m(p.coeff(0));
    for (auto& [exp, c] : p.terms()) {
      if (exp >= 0) continue;
      m.add_term(exp, c);
      m.add_term(-exp, c);
    }
    AffineElt key = *bad;
    auto lower = canonical(key, antispherical);
    for (auto& [e, q] : *lower) add_scaled(cand, e, Laurent(0) - m * q);
  }

  auto self = cand.find(y);
  if (self == cand.end() || !self->second.is_one())
    throw std::logic_error("canonical basis element is not unitriangular");
  return std::make_shared<ModuleElt>(std::move(cand));
}

std::shared_ptr<const ModuleElt> Hecke::canonical_H(const AffineElt& y) const { return canonical(y, false); }
std::shared_ptr<const ModuleElt> Hecke::canonical_N(const AffineElt& y) const { return canonical(y, true); }

Laurent Hecke::h_poly(const AffineElt& x, const AffineElt& y) const {
  auto c = canonical_H(y);
  auto it = c->find(x);
  return it == c->end() ? Laurent() : it->second;
}

Laurent Hecke::n_poly(const AffineElt& x, const AffineElt& y) const {
  if (!in_fW(x) || !in_fW(y)) return Laurent();
  auto c = canonical_N(y);
  auto it = c->find(x);
  return it == c->end() ? Laurent() : it->second;
}

long long Hecke::n_at_one(const AffineElt& x, const AffineElt& y) const { return n_poly(x, y).eval_one(); }

bool Hecke::h_vs_n_identity(const AffineElt& u, const AffineElt& v) const {
  long long lhs = 0;
  for (const AffineElt& z : w_->finite_weyl_elements()) {
    long long term = h_poly(w_->compose(v, z), u).eval_one();
    lhs += (w_->length(z) % 2 == 0) ? term : -term;
  }
  long long rhs = n_at_one(w_->inverse(v), w_->inverse(u));
  return lhs == rhs;
}

std::vector<Hecke::CacheRecord> Hecke::export_cache() const {
  std::vector<CacheRecord> out;
  std::shared_lock lk(mtx_);
  auto dump = [&](const std::map<AffineElt, Slot>& cache, char basis) {
    for (auto& [y, slot] : cache) {
      if (slot.wait_for(std::chrono::seconds(0)) != std::future_status::ready) continue;
      CacheRecord rec;
      rec.basis = basis;
      rec.y = w_->reduced_word(y);
      for (auto& [x, p] : *slot.get()) rec.entries.emplace_back(w_->reduced_word(x), p);
      out.push_back(std::move(rec));
    }
  };
  dump(hcache_, 'H');
  dump(ncache_, 'N');
  return out;
}

void Hecke::import_cache(const std::vector<CacheRecord>& records) {
  for (const CacheRecord& rec : records) {
    AffineElt y = w_->product_of_word(rec.y);
    auto elt = std::make_shared<ModuleElt>();
    for (auto& [word, p] : rec.entries) (*elt)[w_->product_of_word(word)] = p;
    std::promise<std::shared_ptr<const ModuleElt>> promise;
    promise.set_value(elt);
    std::unique_lock lk(mtx_);
    auto& cache = rec.basis == 'H' ? hcache_ : ncache_;
    cache.emplace(y, promise.get_future().share());
  }
}

size_t Hecke::cache_size() const {
  std::shared_lock lk(mtx_);
  return hcache_.size() + ncache_.size();
}

}  // namespace linkage
