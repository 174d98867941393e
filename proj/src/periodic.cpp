#include "linkage/periodic.hpp"

#include <algorithm>
#include <set>

namespace linkage {

namespace {

void add_scaled(PeriodicElt& dst, const Alcove& key, const Laurent& p) {
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

PeriodicElt Periodic::act_Cs(const PeriodicElt& x, int s) const {
  PeriodicElt out;
  for (auto& [a, p] : x) {
    Alcove as = w_->right_mult(a, s);
    add_scaled(out, as, p);
    add_scaled(out, a, p * (w_->upward(a, as) ? kV : kVinv));
  }
  return out;
}

PeriodicElt Periodic::E_lambda(const Coweight& lam) const {
  PeriodicElt out;
  for (const AffineElt& z : w_->finite_weyl_elements()) {
    Alcove a = w_->translate_alcove(w_->alcove_of(z), lam);
    out[a] = Laurent::monomial(1, w_->length(z));
  }
  return out;
}

Alcove Periodic::star(const AffineElt& x, const Alcove& a) const {
  if (!std::all_of(x.b.begin(), x.b.end(), [](long long v) { return v == 0; }))
    throw std::invalid_argument("star: expected a finite Weyl element");
  Coweight lam = w_->box_point(a);
  Coweight neg = lam;
  for (auto& v : neg) v = -v;
  Alcove inner = w_->translate_alcove(a, neg);
  return w_->translate_alcove(inner, w_->act(x, lam, 1));
}

std::vector<std::pair<Alcove, int>> Periodic::alt_terms(const Alcove& a) const {
  std::vector<std::pair<Alcove, int>> out;
  for (const AffineElt& z : w_->finite_weyl_elements())
    out.emplace_back(star(z, a), w_->length(z) % 2 == 0 ? 1 : -1);
  return out;
}

ModuleElt Periodic::res(const PeriodicElt& x) const {
  ModuleElt out;
  for (auto& [a, p] : x) {
    if (!w_->is_dominant(a)) continue;
    AffineElt e = w_->element_of(a);
    auto it = out.find(e);
    if (it == out.end())
      out.emplace(e, p);
    else {
      it->second += p;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

Laurent Periodic::stabilized_n(const Alcove& b, const Alcove& a) const {
  // translate both arguments deep into rho^vee + C_0^+ along 2 rho^vee and
  // accept the first two consecutive agreeing values of n
  Coweight nu(w_->rs().rank(), 2);  // 2 rho^vee
  auto deep = [&](const Alcove& c) {
    for (int k = 0; k < w_->rs().num_positive_roots(); ++k)
      if (c.n[k] - 1 < w_->rs().height(k)) return false;
    return true;
  };
  auto shift_needed = [&](const Alcove& c) {
    long long m = 0;
    for (int k = 0; k < w_->rs().num_positive_roots(); ++k) {
      long long step = w_->rs().pairing_root(nu, k);
      long long deficit = w_->rs().height(k) - (c.n[k] - 1);
      if (deficit > 0) m = std::max(m, (deficit + step - 1) / step);
    }
    return m;
  };
  long long m0 = std::max(shift_needed(a), shift_needed(b));
  Alcove ta = a, tb = b;
  if (m0 > 0) {
    Coweight off(w_->rs().rank(), 2 * m0);
    ta = w_->translate_alcove(ta, off);
    tb = w_->translate_alcove(tb, off);
  }
  if (!deep(ta) || !deep(tb)) throw std::logic_error("translation did not reach the deep cone");

  Laurent prev = h_->n_poly(w_->element_of(tb), w_->element_of(ta));
  for (int step = 0; step < budget_; ++step) {
    ta = w_->translate_alcove(ta, nu);
    tb = w_->translate_alcove(tb, nu);
    Laurent cur = h_->n_poly(w_->element_of(tb), w_->element_of(ta));
    if (cur == prev) return cur;
    prev = cur;
  }
  throw StabilizationError("periodic polynomial did not stabilize within the translation budget");
}

Laurent Periodic::p_poly(const Alcove& b, const Alcove& a) const {
  // normalize by the translation putting A's box at the origin
  Coweight lam = w_->box_point(a);
  Coweight neg = lam;
  for (auto& v : neg) v = -v;
  std::pair<Alcove, Alcove> key{w_->translate_alcove(b, neg), w_->translate_alcove(a, neg)};
  {
    std::shared_lock lk(mtx_);
    auto it = pcache_.find(key);
    if (it != pcache_.end()) return it->second;
  }
  Laurent val = stabilized_n(key.first, key.second);
  std::unique_lock lk(mtx_);
  pcache_.emplace(key, val);
  return val;
}

std::vector<Alcove> Periodic::support_S_A(const Alcove& a, int radius) const {
  Coweight v = w_->box_point(a);
  Coweight neg = v;
  for (auto& c : neg) c = -c;
  Alcove inner = w_->translate_alcove(a, neg);  // inside the fundamental box
  if (w_->d(inner) > radius)
    throw std::invalid_argument("support_S_A: region too small for the box-anchored down-set");
  AffineElt einner = w_->element_of(inner);
  std::vector<Alcove> down;
  for (auto& [g, c] : w_->dominant_alcoves_up_to(w_->d(inner)))
    if (w_->bruhat_leq(g, einner)) down.push_back(c);
  std::set<Alcove> out;
  for (const AffineElt& z : w_->finite_weyl_elements())
    for (const Alcove& c : down) out.insert(w_->translate_alcove(w_->act_alcove(z, c), v));
  return {out.begin(), out.end()};
}

ModuleElt Periodic::res_alt_P(const Alcove& a) const {
  Coweight lam = w_->box_point(a);
  Coweight neg = lam;
  for (auto& c : neg) c = -c;
  Alcove b0 = w_->translate_alcove(a, neg);  // A = lam + B0, B0 in Pi

  // distinct alcoves of the W_0-spread of the down-set of B0, with their
  // translation-invariant p values against B0
  std::set<Alcove> spread;
  {
    AffineElt e0 = w_->element_of(b0);
    for (auto& [g, c] : w_->dominant_alcoves_up_to(w_->d(b0)))
      if (w_->bruhat_leq(g, e0))
        for (const AffineElt& z : w_->finite_weyl_elements()) spread.insert(w_->act_alcove(z, c));
  }
  std::map<Alcove, Laurent> pvals;
  for (const Alcove& c : spread) {
    Laurent p = p_poly(c, b0);
    if (!p.is_zero()) pvals.emplace(c, p);
  }

  ModuleElt out;
  for (const AffineElt& z : w_->finite_weyl_elements()) {
    int sign = w_->length(z) % 2 == 0 ? 1 : -1;
    Coweight zlam = w_->act(z, lam, 1);
    for (auto& [c, p] : pvals) {
      Alcove shifted = w_->translate_alcove(c, zlam);
      if (!w_->is_dominant(shifted)) continue;
      AffineElt key = w_->element_of(shifted);
      Laurent term = sign > 0 ? p : Laurent(0) - p;
      auto it = out.find(key);
      if (it == out.end())
        out.emplace(key, term);
      else {
        it->second += term;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace linkage
