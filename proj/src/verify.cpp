#include "linkage/verify.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>

namespace linkage {

namespace {

using json = nlohmann::ordered_json;

std::string alcove_id(const Alcove& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.n.size(); ++i) s += (i ? "," : "") + std::to_string(a.n[i]);
  return s + ")";
}

std::string weight_id(const Coweight& c) {
  std::string s = "[";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

std::string facet_id(const Weyl& w, const Facet& f) {
  std::string s = "{";
  bool first = true;
  for (int k = 0; k < w.rs().num_positive_roots(); ++k) {
    if (!f.is_eq[k]) continue;
    if (!first) s += ",";
    first = false;
    s += "r" + std::to_string(k) + "=" + std::to_string(f.val[k]);
  }
  if (first) s += "interior";
  return s + "}";
}

struct Instance {
  std::string id;
  std::function<std::pair<bool, std::string>()> run;
};

json run_instances(const std::string& suite, const Engine& e, const VerifyOptions& opt,
                   std::vector<Instance>& instances) {
  std::vector<std::pair<bool, std::string>> results(instances.size());
  int jobs = opt.jobs;
  if (jobs <= 1) {
    for (size_t i = 0; i < instances.size(); ++i) results[i] = instances[i].run();
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= instances.size()) return;
        results[i] = instances[i].run();
      }
    };
    std::vector<std::future<void>> pool;
    for (int t = 0; t < jobs; ++t) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }
  json out;
  out["suite"] = suite;
  out["type"] = e.type;
  out["ell"] = opt.ell;
  out["radius"] = opt.radius;
  json arr = json::array();
  bool all = true;
  for (size_t i = 0; i < instances.size(); ++i) {
    json item;
    item["id"] = instances[i].id;
    item["pass"] = results[i].first;
    if (!results[i].first) item["detail"] = results[i].second;
    all = all && results[i].first;
    arr.push_back(item);
  }
  out["instances"] = arr;
  out["count"] = instances.size();
  out["pass"] = all;
  return out;
}

bool rho_deep(const Weyl& w, const Alcove& a) {
  for (int k = 0; k < w.rs().num_positive_roots(); ++k)
    if (a.n[k] - 1 < w.rs().height(k)) return false;
  return true;
}

}  // namespace

std::vector<Facet> fundamental_facets(const Weyl& w) {
  const RootSystem& rs = w.rs();
  // faces per factor simplex: nonempty vertex subsets cut by wall choices
  std::vector<std::vector<QPoint>> factor_points;
  for (size_t f = 0; f < rs.factors().size(); ++f) {
    const auto& verts = rs.alcove_vertices_by_factor()[f];
    std::set<QPoint> pts;
    const int nwalls = rs.factors()[f].rank + 1;  // finite walls + affine wall
    for (unsigned mask = 0; mask < (1u << nwalls); ++mask) {
      std::vector<const QPoint*> face;
      for (const QPoint& v : verts) {
        bool ok = true;
        for (int wll = 0; wll < nwalls && ok; ++wll) {
          if (!(mask & (1u << wll))) continue;
          if (wll < rs.factors()[f].rank) {
            int coord = rs.factors()[f].first_index + wll;
            ok = v[coord] == Rat(0);
          } else {
            ok = rs.pairing_root(v, rs.factors()[f].highest_root) == Rat(1);
          }
        }
        if (ok) face.push_back(&v);
      }
      if (face.empty()) continue;
      QPoint bary(rs.rank(), Rat(0));
      for (int i = 0; i < rs.rank(); ++i) {
        Rat s(0);
        for (auto* v : face) s = s + (*v)[i];
        bary[i] = s / Rat(static_cast<long long>(face.size()));
      }
      pts.insert(bary);
    }
    factor_points.push_back(std::vector<QPoint>(pts.begin(), pts.end()));
  }
  // combine factors by adding the per-factor barycenters
  std::vector<QPoint> combos{QPoint(rs.rank(), Rat(0))};
  for (auto& pts : factor_points) {
    std::vector<QPoint> next;
    for (const QPoint& base : combos)
      for (const QPoint& p : pts) {
        QPoint q = base;
        for (int i = 0; i < rs.rank(); ++i) q[i] = q[i] + p[i];
        next.push_back(q);
      }
    combos = std::move(next);
  }
  std::set<Facet> found;
  for (const QPoint& p : combos) found.insert(w.facet_of(p));
  return {found.begin(), found.end()};
}

std::vector<std::string> verify_suite_names() {
  return {"hat", "soergel", "coset", "periodic-inv", "closure", "chain", "reverse-order", "h-vs-n"};
}

json run_verify_suite(const std::string& suite, const Engine& e, const VerifyOptions& opt) {
  const Weyl& w = *e.weyl;
  std::vector<Instance> instances;

  if (suite == "hat") {
    for (auto& [g, a] : w.dominant_alcoves_up_to(opt.radius)) {
      AffineElt ge = g;
      Alcove aa = a;
      instances.push_back({alcove_id(a), [&, ge, aa]() -> std::pair<bool, std::string> {
                             AffineElt hat = w.element_of(w.hat_op(aa));
                             long long v = e.hecke->n_at_one(ge, hat);
                             if (v == 1) return {true, ""};
                             return {false, "n(1) = " + std::to_string(v)};
                           }});
    }
  } else if (suite == "soergel") {
    for (auto& [g, a] : w.dominant_alcoves_up_to(opt.radius)) {
      if (!rho_deep(w, a)) continue;
      AffineElt ge = g;
      Alcove aa = a;
      instances.push_back({alcove_id(a), [&, ge, aa]() -> std::pair<bool, std::string> {
                             try {
                               ModuleElt lhs = *e.hecke->canonical_N(ge);
                               ModuleElt rhs = e.periodic->res_alt_P(aa);
                               if (lhs == rhs) return {true, ""};
                               return {false, "coefficient mismatch"};
                             } catch (const StabilizationError& err) {
                               return {false, err.what()};
                             }
                           }});
    }
  } else if (suite == "coset") {
    for (const Facet& q : fundamental_facets(w)) {
      if (q.is_alcove()) continue;  // proper facets only
      auto stab = w.stabilizer(q);
      int expand = w.length(stab.longest);
      for (auto& [g, a] : w.alcoves_up_to(opt.radius)) {
        (void)a;
        if (!w.is_in_fWg(g, stab.gens)) continue;
        AffineElt ge = g;
        Facet qq = q;
        auto gens = stab.gens;
        auto elements = stab.elements;
        int rad = opt.radius + expand;
        instances.push_back(
            {facet_id(w, q) + " w=" + alcove_id(w.alcove_of(g)),
             [&, ge, qq, gens, elements, rad]() -> std::pair<bool, std::string> {
               for (auto& [g2, a2] : w.alcoves_up_to(rad)) {
                 (void)a2;
                 if (!e.hecke->in_fW(g2)) continue;
                 long long base = e.hecke->n_at_one(g2, ge);
                 for (auto& r : elements)
                   if (e.hecke->n_at_one(w.compose(g2, r), ge) != base)
                     return {false, "not constant at w'=" + alcove_id(w.alcove_of(g2))};
                 if (!e.hecke->in_fW(w.max_in_wWg(g2, gens)) && base != 0)
                   return {false, "nonzero although max leaves fW at w'=" + alcove_id(w.alcove_of(g2))};
               }
               return {true, ""};
             }});
      }
    }
  } else if (suite == "periodic-inv") {
    for (auto& [g, a] : w.dominant_alcoves_up_to(opt.radius)) {
      (void)g;
      if (!rho_deep(w, a)) continue;
      Alcove aa = a;
      instances.push_back({alcove_id(a), [&, aa]() -> std::pair<bool, std::string> {
                             try {
                               Coweight v = w.box_point(aa);
                               Coweight neg = v;
                               for (auto& c : neg) c = -c;
                               auto supp = e.periodic->support_S_A(aa, 100);
                               std::set<Alcove> sset(supp.begin(), supp.end());
                               for (const Alcove& c : supp) {
                                 long long val = e.periodic->p_at_one(c, aa);
                                 for (const AffineElt& z : w.finite_weyl_elements()) {
                                   Alcove img = w.translate_alcove(
                                       w.act_alcove(z, w.translate_alcove(c, neg)), v);
                                   if (e.periodic->p_at_one(img, aa) != val)
                                     return {false, "invariance fails at C=" + alcove_id(c)};
                                 }
                               }
                               int outside = 0;
                               for (auto& [g2, c] : w.alcoves_up_to(w.d(aa) + 2)) {
                                 (void)g2;
                                 if (sset.count(c)) continue;
                                 if (!e.periodic->p_poly(c, aa).is_zero())
                                   return {false, "support violated at B=" + alcove_id(c)};
                                 if (++outside >= 12) break;
                               }
                               return {true, ""};
                             } catch (const StabilizationError& err) {
                               return {false, err.what()};
                             }
                           }});
    }
  } else if (suite == "closure") {
    for (const Facet& g : fundamental_facets(w)) {
      Facet gg = g;
      instances.push_back({facet_id(w, g), [&, gg]() -> std::pair<bool, std::string> {
                             ClosurePartition part = e.blocks->closure_oracle(gg, opt.ell, opt.radius);
                             if (!part.certified) return {false, "uncertified region"};
                             if (part.closure_class != part.formula_class)
                               return {false, "closure and formula partitions differ"};
                             if (!w.is_special(gg)) {
                               for (int c : part.closure_class)
                                 if (c != 0) return {false, "non-special facet split into classes"};
                             }
                             return {true, ""};
                           }});
    }
  } else if (suite == "chain") {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<long long> coord(0, std::max(2, opt.radius / 2));
    int made = 0, guard = 0;
    while (made < opt.count && guard < 1000 * opt.count) {
      ++guard;
      Coweight lam(w.rs().rank());
      for (auto& c : lam) c = coord(rng);
      if (made % 3 == 2) {
        // Steinberg-type weight: lambda + rho = ell^r * (strictly dominant)
        for (size_t i = 0; i < lam.size(); ++i) lam[i] = opt.ell * (lam[i] + 1) - 1;
      }
      auto block = e.blocks->block_of(lam, opt.ell, false, opt.radius * 3);
      if (block.weights.size() < 2) continue;
      std::uniform_int_distribution<size_t> pick(0, block.weights.size() - 1);
      Coweight mu = block.weights[pick(rng)];
      Coweight l0 = lam;
      ++made;
      instances.push_back({"pair " + weight_id(l0) + "~" + weight_id(mu),
                           [&, l0, mu]() -> std::pair<bool, std::string> {
                             ChainResult cr = e.blocks->chain_between(l0, mu, opt.ell);
                             if (!cr.certified) return {false, "chain not certified"};
                             if (cr.weights.front() != l0 || cr.weights.back() != mu)
                               return {false, "endpoints wrong"};
                             if (static_cast<long long>(cr.weights.size()) - 1 > cr.bound)
                               return {false, "bound violated"};
                             for (auto& [v1, v2] : cr.values)
                               if (v1 == 0 || v2 == 0) return {false, "witness value zero"};
                             return {true, ""};
                           }});
    }
  } else if (suite == "reverse-order") {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<long long> coord(0, opt.radius);
    for (auto& [g, a] : w.dominant_alcoves_up_to(opt.radius)) {
      AffineElt ge = g;
      Alcove aa = a;
      unsigned sub = rng();
      instances.push_back({alcove_id(a), [&, ge, aa, sub]() -> std::pair<bool, std::string> {
                             std::mt19937 local(sub);
                             std::uniform_int_distribution<long long> c(0, opt.radius);
                             for (int s = 0; s < w.num_generators(); ++s) {
                               AffineElt gs = w.compose(ge, w.generators()[s]);
                               Alcove as = w.alcove_of(gs);
                               if (!w.is_dominant(as)) continue;
                               for (int i = 0; i < 8; ++i) {
                                 Coweight v(w.rs().rank());
                                 for (auto& t : v) t = c(local);
                                 AffineElt wv = w.w_special(v);
                                 Alcove wa = w.act_alcove(wv, aa), was = w.act_alcove(wv, as);
                                 if (!w.is_dominant(wa) || !w.is_dominant(was)) continue;
                                 bool lhs = w.length(ge) < w.length(gs);
                                 bool rhs = w.d(was) < w.d(wa);
                                 if (lhs != rhs)
                                   return {false, "reversal fails at s=" + std::to_string(s) +
                                                      " v=" + weight_id(v)};
                               }
                             }
                             return {true, ""};
                           }});
    }
  } else if (suite == "h-vs-n") {
    std::vector<AffineElt> mins;
    for (auto& [g, a] : w.alcoves_up_to(opt.radius)) {
      (void)a;
      bool min = true;
      for (int i = 0; i < w.rs().rank(); ++i)
        if (w.length(w.compose(g, w.generators()[i])) < w.length(g)) min = false;
      if (min) mins.push_back(g);
    }
    for (auto& u : mins) {
      AffineElt uu = u;
      instances.push_back({"u=" + alcove_id(w.alcove_of(u)), [&, uu, mins]() -> std::pair<bool, std::string> {
                             for (auto& v : mins)
                               if (!e.hecke->h_vs_n_identity(uu, v))
                                 return {false, "fails at v=" + alcove_id(w.alcove_of(v))};
                             return {true, ""};
                           }});
    }
  } else {
    throw std::invalid_argument("unknown verify suite: " + suite);
  }

  return run_instances(suite, e, opt, instances);
}

}  // namespace linkage
