#include "linkage/blocks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace linkage {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> classes(int limit) {
    std::map<int, int> renumber;
    std::vector<int> out(limit);
    for (int i = 0; i < limit; ++i) {
      int root = find(i);
      auto it = renumber.find(root);
      if (it == renumber.end()) it = renumber.emplace(root, static_cast<int>(renumber.size())).first;
      out[i] = it->second;
    }
    return out;
  }
};

long long pow_ll(long long base, long long exp) {
  long long r = 1;
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

long long valuation(long long x, long long ell) {
  long long v = 0;
  while (x % ell == 0) {
    x /= ell;
    ++v;
  }
  return v;
}

}  // namespace

Blocks::Blocks(std::shared_ptr<const Weyl> w, std::shared_ptr<Hecke> h)
    : w_(std::move(w)), h_(std::move(h)) {
  factor_rs_ = w_->rs().decompose_irreducible();
  if (factor_rs_.size() == 1) {
    factor_weyl_.push_back(w_);
    factor_hecke_.push_back(h_);
  } else {
    for (auto& rs : factor_rs_) {
      auto fw = std::make_shared<Weyl>(rs);
      factor_weyl_.push_back(fw);
      factor_hecke_.push_back(std::make_shared<Hecke>(fw));
      factor_blocks_.push_back(std::make_shared<Blocks>(fw, factor_hecke_.back()));
    }
  }
}

long long Blocks::r_of(const Coweight& lambda, long long ell) {
  if (ell < 2) throw std::domain_error("r_of: ell must be at least 2");
  bool all_zero = true;
  for (long long c : lambda) all_zero = all_zero && c == 0;
  if (all_zero) throw std::domain_error("r_of: undefined on the zero coweight");
  long long r = -1;
  for (long long c : lambda) {
    if (c == 0) continue;
    long long v = valuation(c < 0 ? -c : c, ell);
    r = r < 0 ? v : std::min(r, v);
  }
  return r;
}

void Blocks::check_quantum_constraints(const RootSystem& rs, long long ell) {
  if (ell % 2 == 0) throw TheoryConstraintError("quantum mode requires odd ell");
  int h = 0;
  bool has_g2 = false;
  for (auto& f : rs.factors()) {
    h = std::max(h, f.coxeter_number);
    has_g2 = has_g2 || f.type.letter == 'G';
  }
  if (ell <= h)
    throw TheoryConstraintError("quantum mode requires ell greater than the Coxeter number " +
                                std::to_string(h));
  if (has_g2 && ell == 3) throw TheoryConstraintError("quantum mode excludes ell = 3 in type G2");
}

Blocks::FacetContext Blocks::facet_context(const Coweight& lambda, long long ell) const {
  if (!w_->rs().is_dominant(lambda)) throw std::invalid_argument("facet_context: weight not dominant");
  if (ell < 2) throw std::invalid_argument("facet_context: ell must be at least 2");
  FacetContext ctx;
  ctx.ell = ell;
  Coweight x = lambda;
  for (auto& c : x) c += 1;  // lambda + rho^vee
  auto orep = w_->orbit_representative(x, ell);
  ctx.rep = orep.rep;
  QPoint scaled(w_->rs().rank());
  for (int i = 0; i < w_->rs().rank(); ++i) scaled[i] = Rat(ctx.rep[i], ell);
  ctx.unit_facet = w_->facet_of(scaled);
  ctx.Sg = w_->facet_fixing_generators(ctx.unit_facet);
  ctx.witness = w_->max_in_wWg(orep.witness, ctx.Sg);
  if (w_->act(ctx.witness, ctx.rep, ell) != x)
    throw std::logic_error("facet_context: witness does not map the representative back");
  if (!w_->is_in_fWg(ctx.witness, ctx.Sg))
    throw std::logic_error("facet_context: witness is not the maximal fW coset representative");
  ctx.special = w_->is_special(ctx.unit_facet);
  ctx.r = r_of(x, ell);
  // the valuation criterion classifies point facets; assert agreement there
  if (w_->facet_dimension(ctx.unit_facet) == 0 && ctx.special != (ctx.r >= 1))
    throw std::logic_error("facet_context: special-point classification disagrees with r");
  return ctx;
}

bool Blocks::relation_edge(const AffineElt& w, const AffineElt& wp, const Facet& g) const {
  std::vector<int> Sg = w_->facet_fixing_generators(g);
  if (!w_->is_in_fWg(w, Sg) || !w_->is_in_fWg(wp, Sg))
    throw std::invalid_argument("relation_edge: arguments must lie in fW^g");
  return h_->n_at_one(wp, w) != 0 || h_->n_at_one(w, wp) != 0;
}

std::vector<Coweight> Blocks::orbit_weights_factor(size_t f, const Coweight& x, long long step,
                                                   int radius) const {
  const RootSystem& rs = factor_rs_[f];
  const Weyl& fw = *factor_weyl_[f];
  std::vector<Coweight> out;
  for (const Coweight& mu : fw.dominant_weights_up_to(radius)) {
    Coweight y = mu;
    for (auto& c : y) c += 1;
    bool hit = false;
    for (const AffineElt& z : fw.finite_weyl_elements()) {
      Coweight zx = fw.act(z, x, 1);
      Coweight diff(rs.rank());
      bool divisible = true;
      for (int i = 0; i < rs.rank(); ++i) {
        long long d = y[i] - zx[i];
        if (d % step != 0) {
          divisible = false;
          break;
        }
        diff[i] = d / step;
      }
      if (divisible && rs.in_coroot_lattice(diff)) {
        hit = true;
        break;
      }
    }
    if (hit) out.push_back(mu);
  }
  return out;
}

BlockResult Blocks::block_of(const Coweight& lambda, long long ell, bool quantum, int radius) const {
  if (!w_->rs().is_dominant(lambda)) throw std::invalid_argument("block_of: weight not dominant");
  if (ell < 2) throw std::invalid_argument("block_of: ell must be at least 2");
  if (quantum) check_quantum_constraints(w_->rs(), ell);

  BlockResult res;
  std::vector<std::vector<Coweight>> parts;
  for (size_t f = 0; f < factor_rs_.size(); ++f) {
    Coweight mu = w_->rs().project(lambda, static_cast<int>(f));
    Coweight x = mu;
    for (auto& c : x) c += 1;
    long long r = r_of(x, ell);
    res.r_values.push_back(r);
    if (quantum && r >= 1) {
      parts.push_back({mu});  // delta = 0: the quantum block is a singleton
      continue;
    }
    long long eff_r = quantum ? 0 : r;
    parts.push_back(orbit_weights_factor(f, x, ell * pow_ll(ell, eff_r), radius));
  }

  std::vector<Coweight> acc{{}};
  for (auto& part : parts) {
    std::vector<Coweight> next;
    for (const Coweight& prefix : acc)
      for (const Coweight& tail : part) {
        Coweight joined = prefix;
        joined.insert(joined.end(), tail.begin(), tail.end());
        next.push_back(joined);
      }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  res.weights = std::move(acc);
  res.contains_lambda = std::binary_search(res.weights.begin(), res.weights.end(), lambda);
  return res;
}

bool Blocks::same_orbit(const Coweight& a, const Coweight& b, long long ell) const {
  Coweight xa = a, xb = b;
  for (auto& c : xa) c += 1;
  for (auto& c : xb) c += 1;
  return w_->orbit_representative(xa, ell).rep == w_->orbit_representative(xb, ell).rep;
}

bool Blocks::same_block(const Coweight& a, const Coweight& b, long long ell, bool quantum) const {
  if (quantum) check_quantum_constraints(w_->rs(), ell);
  for (size_t f = 0; f < factor_rs_.size(); ++f) {
    const RootSystem& rs = factor_rs_[f];
    Coweight xa = w_->rs().project(a, static_cast<int>(f));
    Coweight xb = w_->rs().project(b, static_cast<int>(f));
    for (auto& c : xa) c += 1;
    for (auto& c : xb) c += 1;
    long long ra = r_of(xa, ell), rb = r_of(xb, ell);
    if (ra != rb) return false;
    if (quantum && ra >= 1) {
      if (xa != xb) return false;
      continue;
    }
    long long step = ell * pow_ll(ell, quantum ? 0 : ra);
    bool hit = false;
    for (const AffineElt& z : factor_weyl_[f]->finite_weyl_elements()) {
      Coweight zx = factor_weyl_[f]->act(z, xa, 1);
      Coweight diff(rs.rank());
      bool divisible = true;
      for (int i = 0; i < rs.rank(); ++i) {
        long long d = xb[i] - zx[i];
        if (d % step != 0) {
          divisible = false;
          break;
        }
        diff[i] = d / step;
      }
      if (divisible && rs.in_coroot_lattice(diff)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

Blocks::CoreChain Blocks::chain_core(const AffineElt& w, const Facet& g) const {
  if (w_->rs().factors().size() != 1)
    throw std::invalid_argument("chain_core: expects an irreducible root system");
  if (w_->is_special(g)) throw std::invalid_argument("chain_core: special facets need dilation first");
  std::vector<int> Sg = w_->facet_fixing_generators(g);
  if (!w_->is_in_fWg(w, Sg)) throw std::invalid_argument("chain_core: element not in fW^g");
  const bool point_facet = w_->facet_dimension(g) == 0;
  AffineElt wg = w_->max_in_wWg(w_->identity(), Sg);  // longest element of W_g

  CoreChain out;
  out.elements.push_back(w);

  // step 1: move away from the walls of the dominant cone
  Alcove amin = w_->alcove_of(w_->compose(w, wg));
  Alcove ahat = w_->hat_op(amin);
  AffineElt what = w_->element_of(ahat);
  if (!w_->is_in_fWg(what, Sg)) throw std::logic_error("chain_core: hat image left fW^g");
  Coweight neg_rho(w_->rs().rank(), -1);
  out.bound_terms = w_->d(w_->translate_alcove(ahat, neg_rho));
  if (!(what == w)) {
    out.elements.push_back(what);
    out.witnesses.push_back(what);
  }

  // step 2: wall descent from hat(A) down to rho^vee + a_1
  Coweight rho = w_->rs().rho_check();
  Alcove b = w_->translate_alcove(ahat, neg_rho);
  Alcove upper = ahat;
  const Alcove a1 = w_->fundamental_alcove();
  while (!(b == a1)) {
    AffineElt e = w_->element_of(b);
    int sb = -1;
    int le = w_->length(e);
    for (int t = 0; t < w_->num_generators(); ++t)
      if (w_->length(w_->compose(e, w_->generators()[t])) < le) { sb = t; break; }
    Alcove bn = w_->alcove_of(w_->compose(e, w_->generators()[sb]));
    Alcove lower = w_->translate_alcove(bn, rho);
    // the rho^vee shift twists wall labels by a diagram automorphism, so the
    // crossed wall of the shifted pair is located directly
    int s = -1;
    {
      AffineElt eu = w_->element_of(upper);
      for (int t = 0; t < w_->num_generators(); ++t)
        if (w_->alcove_of(w_->compose(eu, w_->generators()[t])) == lower) { s = t; break; }
    }
    if (s < 0) throw std::logic_error("chain_core: descent step is not a wall crossing");
    AffineElt x_lower = w_->max_in_wWg(w_->element_of(lower), Sg);
    if (!(x_lower == out.elements.back())) {
      AffineElt u;
      if (!point_facet) {
        // witness through the facet q = closure(g) pinned to the wall of s
        int wall_root = w_->is_finite_generator(s) ? w_->rs().simple_root_index(s)
                                                   : w_->rs().factors()[0].highest_root;
        int wall_val = w_->is_finite_generator(s) ? 0 : 1;
        QPoint p(w_->rs().rank(), Rat(0));
        std::vector<const QPoint*> face;
        for (const QPoint& vtx : w_->rs().alcove_vertices_by_factor()[0]) {
          bool ok = w_->rs().pairing_root(vtx, wall_root) == Rat(wall_val);
          for (int k = 0; k < w_->rs().num_positive_roots() && ok; ++k)
            if (g.is_eq[k]) ok = w_->rs().pairing_root(vtx, k) == Rat(g.val[k]);
          if (ok) face.push_back(&vtx);
        }
        if (face.empty()) throw std::logic_error("chain_core: wall does not meet the facet closure");
        for (int i = 0; i < w_->rs().rank(); ++i) {
          Rat sum(0);
          for (auto* vtx : face) sum = sum + (*vtx)[i];
          p[i] = sum / Rat(static_cast<long long>(face.size()));
        }
        Facet q = w_->facet_of(p);
        u = w_->max_in_wWg(w_->element_of(lower), w_->facet_fixing_generators(q));
      } else {
        // non-special point facet: witness over the special point of the
        // lower alcove
        Coweight vpt = w_->act(w_->element_of(lower), Coweight(w_->rs().rank(), 0), 1);
        Alcove avplus = w_->translate_alcove(a1, vpt);
        u = w_->max_in_wWg(w_->element_of(avplus), Sg);
      }
      out.elements.push_back(x_lower);
      out.witnesses.push_back(u);
    }
    b = bn;
    upper = lower;
  }
  return out;
}

ChainResult Blocks::chain_irreducible(const Coweight& lambda, const Coweight& lambdap,
                                      long long ell) const {
  FacetContext ca = facet_context(lambda, ell);
  FacetContext cb = facet_context(lambdap, ell);
  if (ca.rep != cb.rep) throw std::logic_error("chain_irreducible: weights not in one orbit");

  CoreChain a = chain_core(ca.witness, ca.unit_facet);
  CoreChain b = chain_core(cb.witness, cb.unit_facet);
  if (!(a.elements.back() == b.elements.back()))
    throw std::logic_error("chain_irreducible: cores do not meet at the base element");

  std::vector<AffineElt> elts = a.elements;
  std::vector<AffineElt> wits = a.witnesses;
  for (size_t i = b.elements.size(); i-- > 1;) {
    elts.push_back(b.elements[i - 1]);
    wits.push_back(b.witnesses[i - 1]);
  }

  ChainResult res;
  res.bound = 2 + a.bound_terms + b.bound_terms;
  auto weight_of = [&](const AffineElt& e) {
    Coweight y = w_->act(e, ca.rep, ell);
    for (auto& c : y) c -= 1;
    return y;
  };

  // verify every witness, dedupe, stop at the first hit of the target
  res.weights.push_back(weight_of(elts[0]));
  const Coweight target = lambdap;
  for (size_t i = 0; i + 1 < elts.size() && res.weights.back() != target; ++i) {
    if (elts[i + 1] == elts[i]) continue;
    long long v1 = h_->n_at_one(elts[i], wits[i]);
    long long v2 = h_->n_at_one(elts[i + 1], wits[i]);
    if (v1 == 0 || v2 == 0) throw std::logic_error("chain witness failed n(1) verification");
    res.witnesses.push_back(weight_of(wits[i]));
    res.values.emplace_back(v1, v2);
    res.weights.push_back(weight_of(elts[i + 1]));
  }
  if (res.weights.back() != target) throw std::logic_error("chain did not reach the target weight");
  res.certified = static_cast<long long>(res.weights.size()) - 1 <= res.bound;
  return res;
}

ChainResult Blocks::chain_between(const Coweight& lambda, const Coweight& lambdap, long long ell,
                                  bool quantum) const {
  if (!w_->rs().is_dominant(lambda) || !w_->rs().is_dominant(lambdap))
    throw std::invalid_argument("chain_between: weights must be dominant");
  if (!same_block(lambda, lambdap, ell, quantum)) {
    auto desc = [&](const Coweight& l) {
      Coweight x = l;
      for (auto& c : x) c += 1;
      auto rep = w_->orbit_representative(x, ell).rep;
      std::string s = "[";
      for (size_t i = 0; i < rep.size(); ++i) s += (i ? "," : "") + std::to_string(rep[i]);
      return s + "] at depth r=" + std::to_string(r_of(x, ell));
    };
    throw DifferentBlocksError("weights lie in different blocks: representatives " + desc(lambda) +
                               " vs " + desc(lambdap));
  }
  ChainResult res;
  if (lambda == lambdap) {
    res.weights = {lambda};
    res.bound = 0;
    res.certified = true;
    return res;
  }

  // per irreducible factor: divide out ell^r, chain at depth zero, scale back
  struct FactorChain {
    ChainResult chain;
    long long scale = 1;
  };
  std::vector<FactorChain> chains(factor_rs_.size());
  for (size_t f = 0; f < factor_rs_.size(); ++f) {
    Coweight x = w_->rs().project(lambda, static_cast<int>(f));
    Coweight xp = w_->rs().project(lambdap, static_cast<int>(f));
    for (auto& c : x) c += 1;
    for (auto& c : xp) c += 1;
    long long scale = pow_ll(ell, r_of(x, ell));
    Coweight lt(x.size()), ltp(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      lt[i] = x[i] / scale - 1;
      ltp[i] = xp[i] / scale - 1;
    }
    const Blocks* fb = factor_rs_.size() == 1 ? this : factor_blocks_[f].get();
    if (lt == ltp) {
      chains[f].chain.weights = {lt};
      chains[f].chain.bound = 0;
      chains[f].chain.certified = true;
    } else {
      chains[f].chain = fb->chain_irreducible(lt, ltp, ell);
    }
    chains[f].scale = scale;
  }

  // zip the factor chains, padding finished factors at their target
  size_t steps = 1;
  for (auto& fc : chains) steps = std::max(steps, fc.chain.weights.size());
  res.bound = 2;
  for (auto& fc : chains) res.bound += std::max<long long>(fc.chain.bound - 2, 0);
  res.certified = true;
  for (size_t k = 0; k < steps; ++k) {
    Coweight wgt, wit;
    std::pair<long long, long long> val{1, 1};
    bool have_edge = k + 1 < steps;
    for (auto& fc : chains) {
      size_t idx = std::min(k, fc.chain.weights.size() - 1);
      Coweight part = fc.chain.weights[idx];
      for (auto& c : part) c = fc.scale * (c + 1) - 1;
      wgt.insert(wgt.end(), part.begin(), part.end());
      if (have_edge) {
        Coweight wpart;
        if (k + 1 < fc.chain.weights.size()) {
          wpart = fc.chain.witnesses[k];
          val.first *= fc.chain.values[k].first;
          val.second *= fc.chain.values[k].second;
        } else {
          wpart = fc.chain.weights.back();  // padded step: the weight links itself
        }
        for (auto& c : wpart) c = fc.scale * (c + 1) - 1;
        wit.insert(wit.end(), wpart.begin(), wpart.end());
      }
      res.certified = res.certified && fc.chain.certified;
    }
    res.weights.push_back(wgt);
    if (have_edge) {
      res.witnesses.push_back(wit);
      res.values.push_back(val);
    }
  }
  res.certified = res.certified && static_cast<long long>(res.weights.size()) - 1 <= res.bound;
  return res;
}

ClosurePartition Blocks::closure_oracle(const Facet& g, long long ell, int radius) const {
  if (w_->rs().factors().size() != 1)
    throw std::invalid_argument("closure_oracle: expects an irreducible root system");
  std::vector<int> Sg = w_->facet_fixing_generators(g);

  ClosurePartition out;
  for (auto& [w, a] : w_->alcoves_up_to(radius)) {
    (void)a;
    if (w_->is_in_fWg(w, Sg)) out.members.push_back(w);
  }
  std::sort(out.members.begin(), out.members.end(), [this](const AffineElt& x, const AffineElt& y) {
    int lx = w_->length(x), ly = w_->length(y);
    if (lx != ly) return lx < ly;
    return x < y;
  });
  const int m = static_cast<int>(out.members.size());
  UnionFind uf(m);
  out.certified = true;

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (relation_edge(out.members[i], out.members[j], g)) uf.unite(i, j);

  if (!w_->is_special(g)) {
    // witnessed chains to the common base element certify a single class
    std::map<AffineElt, int> index;
    for (int i = 0; i < m; ++i) index[out.members[i]] = i;
    for (int i = 0; i < m; ++i) {
      try {
        CoreChain core = chain_core(out.members[i], g);
        int prev = i;
        for (size_t k = 1; k < core.elements.size(); ++k) {
          long long v1 = h_->n_at_one(core.elements[k - 1], core.witnesses[k - 1]);
          long long v2 = h_->n_at_one(core.elements[k], core.witnesses[k - 1]);
          if (v1 == 0 || v2 == 0) throw std::logic_error("closure chain witness failed");
          auto it = index.find(core.elements[k]);
          if (it == index.end()) {
            int id = static_cast<int>(uf.parent.size());
            uf.parent.push_back(id);
            it = index.emplace(core.elements[k], id).first;
          }
          uf.unite(prev, it->second);
          prev = it->second;
        }
      } catch (const std::exception&) {
        out.certified = false;
      }
    }
    out.closure_class = uf.classes(m);
    out.formula_class.assign(m, 0);
    return out;
  }

  // special point: group by depth and dilated orbit, certify each group by a
  // chain at the reduced level; the dilation transport is the only step not
  // witnessed by an n value at this level
  Coweight nu = *w_->facet_lattice_point(g);
  std::vector<Coweight> xw(m);
  std::vector<long long> rw(m);
  for (int i = 0; i < m; ++i) {
    xw[i] = w_->act(out.members[i], nu, 1);
    rw[i] = r_of(xw[i], ell);
  }
  std::map<std::pair<long long, Coweight>, std::vector<int>> groups;
  for (int i = 0; i < m; ++i) {
    long long scale = pow_ll(ell, rw[i]);
    Coweight shifted = xw[i];
    for (auto& c : shifted) c /= scale;
    groups[{rw[i], w_->orbit_representative(shifted, ell).rep}].push_back(i);
  }
  for (auto& [key, idxs] : groups) {
    long long scale = pow_ll(ell, key.first);
    for (size_t k = 1; k < idxs.size(); ++k) {
      Coweight la = xw[idxs[0]], lb = xw[idxs[k]];
      for (auto& c : la) c = c / scale - 1;
      for (auto& c : lb) c = c / scale - 1;
      try {
        if (la == lb) {
          uf.unite(idxs[0], idxs[k]);
        } else {
          ChainResult cr = chain_irreducible(la, lb, ell);
          if (!cr.certified) throw std::logic_error("uncertified dilated chain");
          uf.unite(idxs[0], idxs[k]);
        }
      } catch (const std::exception&) {
        out.certified = false;
      }
    }
  }
  out.closure_class = uf.classes(m);

  // independent coset formula: equal depth and a W_0-translate difference in
  // ell^{r+1} ZR^vee
  UnionFind ff(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (rw[i] != rw[j]) continue;
      long long step = pow_ll(ell, rw[i] + 1);
      bool hit = false;
      for (const AffineElt& z : w_->finite_weyl_elements()) {
        Coweight zx = w_->act(z, xw[i], 1);
        Coweight diff(w_->rs().rank());
        bool divisible = true;
        for (int t = 0; t < w_->rs().rank(); ++t) {
          long long dd = xw[j][t] - zx[t];
          if (dd % step != 0) {
            divisible = false;
            break;
          }
          diff[t] = dd / step;
        }
        if (divisible && w_->rs().in_coroot_lattice(diff)) {
          hit = true;
          break;
        }
      }
      if (hit) ff.unite(i, j);
    }
  out.formula_class = ff.classes(m);
  return out;
}

}  // namespace linkage
