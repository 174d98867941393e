#include "linkage/affine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace linkage {

namespace {

std::vector<long long> identity_matrix(int n) {
  std::vector<long long> m(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
  return m;
}

// Exact inverse of a unimodular integer matrix.
std::vector<long long> invert_matrix(const std::vector<long long>& m, int n) {
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rat(m[static_cast<size_t>(i) * n + j]);
    a[i][n + i] = Rat(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != Rat(0)) { piv = r; break; }
    if (piv < 0) throw std::logic_error("singular linear part");
    std::swap(a[col], a[piv]);
    Rat d = a[col][col];
    for (int j = 0; j < 2 * n; ++j) a[col][j] = a[col][j] / d;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == Rat(0)) continue;
      Rat f = a[r][col];
      for (int j = 0; j < 2 * n; ++j) a[r][j] = a[r][j] - f * a[col][j];
    }
  }
  std::vector<long long> out(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = a[i][n + j];
      if (!v.is_integer()) throw std::logic_error("non-integer inverse");
      out[static_cast<size_t>(i) * n + j] = v.num;
    }
  return out;
}

}  // namespace

std::string word_to_string(const std::vector<int>& word) {
  std::string s = "[";
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(word[i]);
  }
  return s + "]";
}

Weyl::Weyl(RootSystem rs) : rs_(std::move(rs)) {
  const int n = rs_.rank();
  for (int k = 0; k < rs_.num_positive_roots(); ++k) root_index_[rs_.positive_roots()[k]] = k;

  // finite simple reflections s_i : x -> x - x_i * alpha_i^vee
  for (int i = 0; i < n; ++i) {
    AffineElt s;
    s.m = identity_matrix(n);
    s.b.assign(n, 0);
    const Coweight& av = rs_.coroot(rs_.simple_root_index(i));
    for (int k = 0; k < n; ++k) s.m[static_cast<size_t>(k) * n + i] -= av[k];
    gens_.push_back(s);
  }
  // affine generator per factor: x -> s_beta(x) + scale * beta^vee
  for (auto& seed : rs_.highest_short_coroots()) {
    AffineElt s;
    s.m = identity_matrix(n);
    s.b = seed.coroot;
    const RootVec& beta = rs_.positive_roots()[seed.root_index];
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) s.m[static_cast<size_t>(k) * n + j] -= seed.coroot[k] * beta[j];
    gens_.push_back(s);
  }

  // linear reflection s_alpha for every positive root
  for (int k = 0; k < rs_.num_positive_roots(); ++k) {
    AffineElt s;
    s.m = identity_matrix(n);
    s.b.assign(n, 0);
    const RootVec& alpha = rs_.positive_roots()[k];
    const Coweight& av = rs_.coroot(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s.m[static_cast<size_t>(i) * n + j] -= av[i] * alpha[j];
    refl_.push_back(s);
  }

  // longest finite element: push rho^vee to the antidominant chamber
  AffineElt w = identity();
  Coweight x = rs_.rho_check();
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < n; ++i) {
      if (x[i] > 0) {
        x = act(gens_[i], x, 1);
        w = compose(gens_[i], w);
        moved = true;
        break;
      }
    }
  }
  w0_ = w;
}

AffineElt Weyl::identity() const {
  AffineElt e;
  e.m = identity_matrix(rs_.rank());
  e.b.assign(rs_.rank(), 0);
  return e;
}

AffineElt Weyl::compose(const AffineElt& x, const AffineElt& y) const {
  const int n = rs_.rank();
  AffineElt r;
  r.m.assign(static_cast<size_t>(n) * n, 0);
  r.b.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long v = x.mat(i, k);
      if (v == 0) continue;
      for (int j = 0; j < n; ++j) r.m[static_cast<size_t>(i) * n + j] += v * y.mat(k, j);
      r.b[i] += v * y.b[k];
    }
  for (int i = 0; i < n; ++i) r.b[i] += x.b[i];
  return r;
}

AffineElt Weyl::inverse(const AffineElt& x) const {
  const int n = rs_.rank();
  AffineElt r;
  r.m = invert_matrix(x.m, n);
  r.b.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.b[i] -= r.m[static_cast<size_t>(i) * n + j] * x.b[j];
  return r;
}

AffineElt Weyl::product_of_word(const std::vector<int>& word) const {
  AffineElt r = identity();
  for (int s : word) r = compose(r, gens_.at(static_cast<size_t>(s)));
  return r;
}

AffineElt Weyl::translation(const Coweight& mu) const {
  AffineElt t;
  t.m = identity_matrix(rs_.rank());
  t.b = mu;
  return t;
}

bool Weyl::in_W(const AffineElt& x) const { return rs_.in_coroot_lattice(x.b); }

bool Weyl::is_translation(const AffineElt& x) const { return x.m == identity_matrix(rs_.rank()); }

QPoint Weyl::act(const AffineElt& g, const QPoint& p, long long scale) const {
  const int n = rs_.rank();
  QPoint out(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    Rat s(scale * g.b[i]);
    for (int j = 0; j < n; ++j)
      if (g.mat(i, j) != 0) s = s + Rat(g.mat(i, j)) * p[j];
    out[i] = s;
  }
  return out;
}

Coweight Weyl::act(const AffineElt& g, const Coweight& p, long long scale) const {
  const int n = rs_.rank();
  Coweight out(n, 0);
  for (int i = 0; i < n; ++i) {
    long long s = scale * g.b[i];
    for (int j = 0; j < n; ++j) s += g.mat(i, j) * p[j];
    out[i] = s;
  }
  return out;
}

Coweight Weyl::act_dot(const AffineElt& g, const Coweight& mu, long long ell) const {
  Coweight shifted = mu;
  for (auto& c : shifted) c += 1;
  Coweight img = act(g, shifted, ell);
  for (auto& c : img) c -= 1;
  return img;
}

Alcove Weyl::fundamental_alcove() const {
  Alcove a;
  a.n.assign(rs_.num_positive_roots(), 1);
  return a;
}

Weyl::PulledRoot Weyl::pull_root(const AffineElt& g, int root_index) const {
  const int n = rs_.rank();
  const RootVec& c = rs_.positive_roots()[root_index];
  RootVec gamma(n, 0);
  for (int i = 0; i < n; ++i) {
    long long s = 0;
    for (int j = 0; j < n; ++j) s += c[j] * g.mat(j, i);
    gamma[i] = s;
  }
  auto it = root_index_.find(gamma);
  if (it != root_index_.end()) return {it->second, +1};
  for (auto& v : gamma) v = -v;
  it = root_index_.find(gamma);
  if (it == root_index_.end()) throw std::logic_error("linear part does not permute roots");
  return {it->second, -1};
}

Alcove Weyl::act_alcove(const AffineElt& g, const Alcove& a) const {
  const int m = rs_.num_positive_roots();
  Alcove out;
  out.n.resize(m);
  for (int k = 0; k < m; ++k) {
    PulledRoot pr = pull_root(g, k);
    long long t = rs_.pairing_root(g.b, k);
    out.n[k] = static_cast<int>(pr.sign > 0 ? a.n[pr.index] + t : 1 - a.n[pr.index] + t);
  }
  return out;
}

Alcove Weyl::translate_alcove(const Alcove& a, const Coweight& mu) const {
  Alcove out = a;
  for (int k = 0; k < rs_.num_positive_roots(); ++k) out.n[k] += static_cast<int>(rs_.pairing_root(mu, k));
  return out;
}

Alcove Weyl::right_mult(const Alcove& a, int s) const {
  return alcove_of(compose(element_of(a), gens_.at(static_cast<size_t>(s))));
}

Alcove Weyl::alcove_of(const AffineElt& w) const {
  {
    std::shared_lock lk(mtx_);
    auto it = alcove_cache_.find(w);
    if (it != alcove_cache_.end()) return it->second;
  }
  Alcove a = act_alcove(w, fundamental_alcove());
  std::unique_lock lk(mtx_);
  alcove_cache_.emplace(w, a);
  return a;
}

int Weyl::d(const Alcove& a) const {
  int r = 0;
  for (int v : a.n) r += v >= 1 ? v - 1 : 1 - v;
  return r;
}

int Weyl::length(const AffineElt& w) const {
  {
    std::shared_lock lk(mtx_);
    auto it = length_cache_.find(w);
    if (it != length_cache_.end()) return it->second;
  }
  int l = d(alcove_of(w));
  std::unique_lock lk(mtx_);
  length_cache_.emplace(w, l);
  return l;
}

bool Weyl::is_dominant(const Alcove& a) const {
  for (int v : a.n)
    if (v < 1) return false;
  return true;
}

AffineElt Weyl::element_of(const Alcove& alc) const {
  Alcove a = alc;
  const Alcove a1 = fundamental_alcove();
  std::vector<int> word;
  const int guard = d(a) + 1;
  for (int steps = 0; !(a == a1); ++steps) {
    if (steps > guard) throw std::invalid_argument("not an alcove of the W-orbit of a_1");
    int chosen = -1;
    for (int s = 0; s < num_generators() && chosen < 0; ++s) {
      if (is_finite_generator(s)) {
        if (a.n[rs_.simple_root_index(s)] <= 0) chosen = s;
      } else {
        int f = s - rs_.rank();
        if (a.n[rs_.factors()[f].highest_root] >= 2) chosen = s;
      }
    }
    if (chosen < 0) throw std::invalid_argument("inconsistent alcove bounds");
    word.push_back(chosen);
    a = act_alcove(gens_[chosen], a);
  }
  return product_of_word(word);
}

std::vector<int> Weyl::reduced_word(const AffineElt& w) const {
  // left-strip the lowest-indexed wall of a_1 separating the alcove; this is
  // the deterministic word used for serialization and cache keys
  Alcove a = alcove_of(w);
  const Alcove a1 = fundamental_alcove();
  std::vector<int> word;
  while (!(a == a1)) {
    int chosen = -1;
    for (int s = 0; s < num_generators() && chosen < 0; ++s) {
      if (is_finite_generator(s)) {
        if (a.n[rs_.simple_root_index(s)] <= 0) chosen = s;
      } else {
        int f = s - rs_.rank();
        if (a.n[rs_.factors()[f].highest_root] >= 2) chosen = s;
      }
    }
    if (chosen < 0) throw std::invalid_argument("element not in W (length-zero part present)");
    word.push_back(chosen);
    a = act_alcove(gens_[chosen], a);
  }
  return word;
}

std::vector<int> Weyl::right_descents(const AffineElt& w) const {
  std::vector<int> out;
  int l = length(w);
  for (int s = 0; s < num_generators(); ++s)
    if (length(compose(w, gens_[s])) < l) out.push_back(s);
  return out;
}

std::vector<int> Weyl::left_descents(const AffineElt& w) const {
  std::vector<int> out;
  int l = length(w);
  for (int s = 0; s < num_generators(); ++s)
    if (length(compose(gens_[s], w)) < l) out.push_back(s);
  return out;
}

bool Weyl::bruhat_leq(const AffineElt& x, const AffineElt& y) const {
  if (x == y) return true;
  int lx = length(x), ly = length(y);
  if (lx >= ly) return false;
  {
    std::shared_lock lk(mtx_);
    auto it = bruhat_cache_.find({x, y});
    if (it != bruhat_cache_.end()) return it->second;
  }
  // descend on the lowest right descent of y
  int s = -1;
  for (int t = 0; t < num_generators(); ++t)
    if (length(compose(y, gens_[t])) < ly) { s = t; break; }
  AffineElt ys = compose(y, gens_[s]);
  AffineElt xs = compose(x, gens_[s]);
  bool res = length(xs) < lx ? bruhat_leq(xs, ys) : bruhat_leq(x, ys);
  std::unique_lock lk(mtx_);
  bruhat_cache_[{x, y}] = res;
  return res;
}

bool Weyl::upward(const Alcove& a, const Alcove& as) const {
  int diff = -1;
  for (int k = 0; k < rs_.num_positive_roots(); ++k) {
    if (a.n[k] != as.n[k]) {
      if (diff >= 0) throw std::logic_error("alcoves not adjacent");
      diff = k;
    }
  }
  if (diff < 0) throw std::logic_error("equal alcoves are not adjacent");
  return as.n[diff] > a.n[diff];
}

Alcove Weyl::reflect_alcove(const Alcove& a, int root, long long level) const {
  AffineElt r = refl_[root];
  const Coweight& av = rs_.coroot(root);
  for (int i = 0; i < rs_.rank(); ++i) r.b[i] = level * av[i];
  return act_alcove(r, a);
}

Cert Weyl::periodic_leq(const Alcove& a, const Alcove& b, int radius) const {
  // The generating relations go up across every hyperplane, not only the
  // walls of the current alcove; the bound sum strictly increases along each
  // relation, which bounds the search.
  if (a == b) return Cert::True;
  long long la = 0, lb = 0;
  for (int v : a.n) la += v;
  for (int v : b.n) lb += v;
  if (la >= lb) return Cert::False;
  std::set<Alcove> seen{a};
  std::deque<Alcove> queue{a};
  bool truncated = false;
  while (!queue.empty()) {
    Alcove cur = queue.front();
    queue.pop_front();
    long long lc = 0;
    for (int v : cur.n) lc += v;
    if (lc >= lb) continue;
    for (int k = 0; k < rs_.num_positive_roots(); ++k) {
      for (long long j = cur.n[k];; ++j) {
        if (2 * j - cur.n[k] > radius) break;  // d(image) >= n_alpha(image) - 1
        Alcove nxt = reflect_alcove(cur, k, j);
        long long ln = 0;
        for (int v : nxt.n) ln += v;
        if (ln <= lc) throw std::logic_error("periodic order relation did not increase the grading");
        if (nxt == b) return Cert::True;
        if (ln > lb) continue;
        if (d(nxt) > radius) {
          truncated = true;
          continue;
        }
        if (seen.insert(nxt).second) queue.push_back(nxt);
      }
    }
  }
  return truncated ? Cert::Indeterminate : Cert::False;
}

Coweight Weyl::box_point(const Alcove& a) const {
  Coweight lam(rs_.rank());
  for (int i = 0; i < rs_.rank(); ++i) lam[i] = a.n[rs_.simple_root_index(i)] - 1;
  return lam;
}

bool Weyl::in_box(const QPoint& p, const Coweight& lambda) const {
  for (int i = 0; i < rs_.rank(); ++i) {
    Rat c = p[i] - Rat(lambda[i]);
    if (!(Rat(0) < c && c < Rat(1))) return false;
  }
  return true;
}

Alcove Weyl::check_op(const Alcove& a) const {
  Coweight lam = box_point(a);
  Coweight neg = lam;
  for (auto& v : neg) v = -v;
  Alcove b = translate_alcove(a, neg);
  return translate_alcove(act_alcove(w0_, b), lam);
}

Alcove Weyl::hat_op(const Alcove& a) const {
  Coweight lam = box_point(a);
  Coweight neg = lam;
  for (auto& v : neg) v = -v;
  Alcove b = translate_alcove(a, neg);
  Coweight shift = lam;
  for (auto& v : shift) v += 2;  // lambda + 2 rho^vee
  return translate_alcove(act_alcove(w0_, b), shift);
}

AffineElt Weyl::w_special(const Coweight& v) const {
  AffineElt w = w0_;
  Coweight w0v = act(w0_, v, 1);
  w.b.resize(rs_.rank());
  for (int i = 0; i < rs_.rank(); ++i) w.b[i] = v[i] - w0v[i];
  return w;
}

Facet Weyl::facet_of(const QPoint& p) const {
  const int m = rs_.num_positive_roots();
  Facet f;
  f.is_eq.resize(m);
  f.val.resize(m);
  for (int k = 0; k < m; ++k) {
    Rat c = rs_.pairing_root(p, k);
    if (c.is_integer()) {
      f.is_eq[k] = 1;
      f.val[k] = static_cast<int>(c.num);
    } else {
      f.is_eq[k] = 0;
      f.val[k] = static_cast<int>(c.floor() + 1);
    }
  }
  return f;
}

Facet Weyl::act_facet(const AffineElt& g, const Facet& f) const {
  const int m = rs_.num_positive_roots();
  Facet out;
  out.is_eq.resize(m);
  out.val.resize(m);
  for (int k = 0; k < m; ++k) {
    PulledRoot pr = pull_root(g, k);
    long long t = rs_.pairing_root(g.b, k);
    out.is_eq[k] = f.is_eq[pr.index];
    if (f.is_eq[pr.index]) {
      out.val[k] = static_cast<int>(pr.sign > 0 ? f.val[pr.index] + t : -f.val[pr.index] + t);
    } else {
      out.val[k] = static_cast<int>(pr.sign > 0 ? f.val[pr.index] + t : 1 - f.val[pr.index] + t);
    }
  }
  return out;
}

Facet Weyl::alcove_facet(const Alcove& a) const {
  Facet f;
  f.is_eq.assign(a.n.size(), 0);
  f.val.resize(a.n.size());
  for (size_t k = 0; k < a.n.size(); ++k) f.val[k] = a.n[k];
  return f;
}

Facet Weyl::translate_facet(const Facet& f, const Coweight& mu) const {
  return act_facet(translation(mu), f);
}

bool Weyl::facet_in_closure_of_fundamental(const Facet& f) const {
  for (int k = 0; k < rs_.num_positive_roots(); ++k) {
    if (f.is_eq[k]) {
      if (f.val[k] < 0 || f.val[k] > 1) return false;
    } else if (f.val[k] != 1) {
      return false;
    }
  }
  return true;
}

bool Weyl::facet_dominant(const Facet& f) const {
  for (int k = 0; k < rs_.num_positive_roots(); ++k) {
    if (f.is_eq[k]) {
      if (f.val[k] < 1) return false;
    } else if (f.val[k] < 1) {
      return false;
    }
  }
  return true;
}

QPoint Weyl::facet_point(const Facet& f) const {
  if (!facet_in_closure_of_fundamental(f))
    throw std::invalid_argument("facet_point: reduce to the closure of the fundamental alcove first");
  QPoint total(rs_.rank(), Rat(0));
  for (size_t fac = 0; fac < rs_.factors().size(); ++fac) {
    std::vector<const QPoint*> face;
    for (const QPoint& v : rs_.alcove_vertices_by_factor()[fac]) {
      bool ok = true;
      for (int k = 0; k < rs_.num_positive_roots() && ok; ++k) {
        if (rs_.factor_of_root(k) != static_cast<int>(fac) || !f.is_eq[k]) continue;
        ok = rs_.pairing_root(v, k) == Rat(f.val[k]);
      }
      if (ok) face.push_back(&v);
    }
    if (face.empty()) throw std::logic_error("empty facet face");
    for (int i = 0; i < rs_.rank(); ++i) {
      if (rs_.factor_of_coordinate(i) != static_cast<int>(fac)) continue;
      Rat s(0);
      for (auto* v : face) s = s + (*v)[i];
      total[i] = s / Rat(static_cast<long long>(face.size()));
    }
  }
  if (facet_of(total) != f) throw std::logic_error("facet_point: inconsistent facet data");
  return total;
}

int Weyl::facet_dimension(const Facet& f) const {
  // rank of the pinned roots, by exact elimination
  std::vector<std::vector<Rat>> rows;
  for (int k = 0; k < rs_.num_positive_roots(); ++k) {
    if (!f.is_eq[k]) continue;
    std::vector<Rat> r(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) r[i] = Rat(rs_.positive_roots()[k][i]);
    rows.push_back(r);
  }
  int rank = 0;
  for (int col = 0; col < rs_.rank() && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != Rat(0)) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == Rat(0)) continue;
      Rat fconst = rows[r][col] / rows[rank][col];
      for (int j = 0; j < rs_.rank(); ++j) rows[r][j] = rows[r][j] - fconst * rows[rank][j];
    }
    ++rank;
  }
  return rs_.rank() - rank;
}

std::optional<Coweight> Weyl::facet_lattice_point(const Facet& f) const {
  if (facet_dimension(f) != 0) return std::nullopt;
  // solve <x, alpha> = val over the pinned roots
  std::vector<std::vector<Rat>> rows;
  for (int k = 0; k < rs_.num_positive_roots(); ++k) {
    if (!f.is_eq[k]) continue;
    std::vector<Rat> r(rs_.rank() + 1);
    for (int i = 0; i < rs_.rank(); ++i) r[i] = Rat(rs_.positive_roots()[k][i]);
    r[rs_.rank()] = Rat(f.val[k]);
    rows.push_back(r);
  }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < rs_.rank() && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != Rat(0)) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    Rat d0 = rows[rank][col];
    for (int j = 0; j <= rs_.rank(); ++j) rows[rank][j] = rows[rank][j] / d0;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == Rat(0)) continue;
      Rat fconst = rows[r][col];
      for (int j = 0; j <= rs_.rank(); ++j) rows[r][j] = rows[r][j] - fconst * rows[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  QPoint sol(rs_.rank(), Rat(0));
  for (int r = 0; r < rank; ++r) sol[pivot_col[r]] = rows[r][rs_.rank()];
  Coweight out(rs_.rank());
  for (int i = 0; i < rs_.rank(); ++i) {
    if (!sol[i].is_integer()) return std::nullopt;
    out[i] = sol[i].num;
  }
  return out;
}

bool Weyl::is_special(const Facet& f) const { return facet_lattice_point(f).has_value(); }

Alcove Weyl::min_alcove_at(const Facet& f) const {
  Alcove a;
  a.n.resize(rs_.num_positive_roots());
  for (int k = 0; k < rs_.num_positive_roots(); ++k) a.n[k] = f.val[k];
  return a;
}

Facet Weyl::facet_in_closure(const Alcove& a, const Facet& g) const {
  return act_facet(element_of(a), g);
}

std::vector<int> Weyl::facet_fixing_generators(const Facet& g) const {
  if (!facet_in_closure_of_fundamental(g))
    throw std::invalid_argument("stabilizer: facet must lie in the closure of the fundamental alcove");
  std::vector<int> out;
  for (int s = 0; s < num_generators(); ++s) {
    if (is_finite_generator(s)) {
      int k = rs_.simple_root_index(s);
      if (g.is_eq[k] && g.val[k] == 0) out.push_back(s);
    } else {
      int k = rs_.factors()[s - rs_.rank()].highest_root;
      if (g.is_eq[k] && g.val[k] == 1) out.push_back(s);
    }
  }
  return out;
}

Weyl::Parabolic Weyl::stabilizer(const Facet& g) const {
  Parabolic p;
  p.gens = facet_fixing_generators(g);
  std::set<AffineElt> seen;
  std::deque<AffineElt> queue;
  AffineElt e = identity();
  seen.insert(e);
  queue.push_back(e);
  while (!queue.empty()) {
    AffineElt cur = queue.front();
    queue.pop_front();
    for (int s : p.gens) {
      AffineElt nxt = compose(cur, gens_[s]);
      if (seen.size() > 2000000) throw std::runtime_error("facet stabilizer too large to enumerate");
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  p.elements.assign(seen.begin(), seen.end());
  std::sort(p.elements.begin(), p.elements.end(), [this](const AffineElt& a, const AffineElt& b) {
    int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  p.longest = p.elements.back();
  return p;
}

Facet Weyl::hat_facet(const Facet& h, const Facet& g) const {
  Alcove amin = min_alcove_at(h);
  Alcove ahat = hat_op(amin);
  return facet_in_closure(ahat, g);
}

Weyl::OrbitRep Weyl::orbit_representative(const Coweight& lambda, long long n) const {
  Coweight x = lambda;
  std::vector<int> word;
  const int cap = 100000;
  for (int steps = 0;; ++steps) {
    if (steps > cap) throw std::logic_error("orbit representative walk did not terminate");
    int chosen = -1;
    for (int s = 0; s < num_generators() && chosen < 0; ++s) {
      if (is_finite_generator(s)) {
        if (x[s] < 0) chosen = s;
      } else {
        int f = s - rs_.rank();
        if (rs_.pairing_root(x, rs_.factors()[f].highest_root) > n) chosen = s;
      }
    }
    if (chosen < 0) break;
    x = act(gens_[chosen], x, n);
    word.push_back(chosen);
  }
  OrbitRep out;
  out.rep = x;
  out.witness = product_of_word(word);  // maps rep back to lambda at scale n
  return out;
}

bool Weyl::is_min_in_W0w(const AffineElt& w) const {
  int l = length(w);
  for (int i = 0; i < rs_.rank(); ++i)
    if (length(compose(gens_[i], w)) < l) return false;
  return true;
}

AffineElt Weyl::max_in_wWg(const AffineElt& w, const std::vector<int>& Sg) const {
  AffineElt cur = w;
  bool moved = true;
  while (moved) {
    moved = false;
    int l = length(cur);
    for (int s : Sg) {
      AffineElt nxt = compose(cur, gens_[s]);
      if (length(nxt) > l) {
        cur = nxt;
        moved = true;
        break;
      }
    }
  }
  return cur;
}

AffineElt Weyl::min_in_wWg(const AffineElt& w, const std::vector<int>& Sg) const {
  AffineElt cur = w;
  bool moved = true;
  while (moved) {
    moved = false;
    int l = length(cur);
    for (int s : Sg) {
      AffineElt nxt = compose(cur, gens_[s]);
      if (length(nxt) < l) {
        cur = nxt;
        moved = true;
        break;
      }
    }
  }
  return cur;
}

bool Weyl::is_max_in_wWg(const AffineElt& w, const std::vector<int>& Sg) const {
  int l = length(w);
  for (int s : Sg)
    if (length(compose(w, gens_[s])) > l) return false;
  return true;
}

bool Weyl::is_in_fWg(const AffineElt& w, const std::vector<int>& Sg) const {
  return is_min_in_W0w(w) && is_max_in_wWg(w, Sg);
}

const std::vector<AffineElt>& Weyl::finite_weyl_elements() const {
  std::call_once(w0_enum_once_, [this]() {
    if (rs_.weyl_group_order() > 1000000)
      throw std::runtime_error("finite Weyl group too large to enumerate (order " +
                               std::to_string(rs_.weyl_group_order()) + ")");
    std::set<AffineElt> seen;
    std::deque<AffineElt> queue;
    AffineElt e = identity();
    seen.insert(e);
    queue.push_back(e);
    while (!queue.empty()) {
      AffineElt cur = queue.front();
      queue.pop_front();
      for (int i = 0; i < rs_.rank(); ++i) {
        AffineElt nxt = compose(cur, gens_[i]);
        if (seen.insert(nxt).second) queue.push_back(nxt);
      }
    }
    w0_elements_.assign(seen.begin(), seen.end());
    std::sort(w0_elements_.begin(), w0_elements_.end(), [this](const AffineElt& a, const AffineElt& b) {
      int la = length(a), lb = length(b);
      if (la != lb) return la < lb;
      return a < b;
    });
  });
  return w0_elements_;
}

int Weyl::finite_length(const AffineElt& w) const { return length(w); }

bool Weyl::length_zero(const AffineElt& w) const { return alcove_of(w) == fundamental_alcove(); }

std::pair<AffineElt, AffineElt> Weyl::omega_decompose(const AffineElt& w) const {
  AffineElt wprime = inverse(element_of(alcove_of(inverse(w))));
  AffineElt omega = compose(w, inverse(wprime));
  if (!length_zero(omega)) throw std::logic_error("omega decomposition failed");
  return {omega, wprime};
}

std::vector<std::pair<AffineElt, Alcove>> Weyl::alcoves_up_to(int radius) const {
  std::map<Alcove, AffineElt> seen;
  AffineElt e = identity();
  seen.emplace(fundamental_alcove(), e);
  std::deque<std::pair<AffineElt, int>> queue{{e, 0}};
  while (!queue.empty()) {
    auto [cur, l] = queue.front();
    queue.pop_front();
    if (l >= radius) continue;
    for (int s = 0; s < num_generators(); ++s) {
      AffineElt nxt = compose(cur, gens_[s]);
      if (length(nxt) != l + 1) continue;
      Alcove a = alcove_of(nxt);
      if (seen.emplace(a, nxt).second) queue.emplace_back(nxt, l + 1);
    }
  }
  std::vector<std::pair<AffineElt, Alcove>> out;
  out.reserve(seen.size());
  for (auto& [a, w] : seen) out.emplace_back(w, a);
  return out;
}

std::vector<std::pair<AffineElt, Alcove>> Weyl::dominant_alcoves_up_to(int radius) const {
  std::vector<std::pair<AffineElt, Alcove>> out;
  for (auto& [w, a] : alcoves_up_to(radius))
    if (is_dominant(a)) out.emplace_back(w, a);
  return out;
}

std::vector<Coweight> Weyl::dominant_weights_up_to(int radius) const {
  std::vector<Coweight> out;
  Coweight cur(rs_.rank(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rs_.rank()) {
      for (auto& f : rs_.factors())
        if (rs_.pairing_root(cur, f.highest_root) > radius) return;
      out.push_back(cur);
      return;
    }
    for (long long v = 0; v <= radius; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  return out;
}

std::vector<Facet> Weyl::g_facets_up_to(const Facet& g, int radius) const {
  std::set<Facet> seen;
  for (auto& [w, a] : alcoves_up_to(radius)) {
    (void)a;
    seen.insert(act_facet(w, g));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace linkage
