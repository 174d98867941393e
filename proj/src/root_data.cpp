#include "linkage/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace linkage {

namespace {

void check_type(const CartanType& t);

}  // namespace

std::vector<CartanType> parse_cartan_types(const std::string& s) {
  std::vector<CartanType> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
    if (c < 'A' || c > 'G' || c == 'H') throw std::invalid_argument("bad Cartan letter in '" + s + "'");
    ++i;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw std::invalid_argument("missing rank after '" + std::string(1, c) + "' in '" + s + "'");
    int rank = std::stoi(s.substr(i, j - i));
    out.push_back({c, rank});
    i = j;
    if (i < s.size()) {
      char sep = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
      if (sep != 'x') throw std::invalid_argument("expected 'x' separator in '" + s + "'");
      ++i;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty Cartan type string");
  for (auto& t : out) check_type(t);
  return out;
}

namespace {

void check_type(const CartanType& t) {
  bool ok = false;
  switch (t.letter) {
    case 'A': ok = t.rank >= 1; break;
    case 'B': ok = t.rank >= 2; break;
    case 'C': ok = t.rank >= 2; break;
    case 'D': ok = t.rank >= 4; break;
    case 'E': ok = t.rank >= 6 && t.rank <= 8; break;
    case 'F': ok = t.rank == 4; break;
    case 'G': ok = t.rank == 2; break;
    default: ok = false;
  }
  if (!ok) throw std::invalid_argument("invalid Cartan type " + t.str());
}

long long factorial(int n) {
  long long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

long long weyl_order_of(const CartanType& t) {
  switch (t.letter) {
    case 'A': return factorial(t.rank + 1);
    case 'B':
    case 'C': return factorial(t.rank) << t.rank;
    case 'D': return factorial(t.rank) << (t.rank - 1);
    case 'E':
      if (t.rank == 6) return 51840;
      if (t.rank == 7) return 2903040;
      return 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

}  // namespace

void RootSystem::build_cartan(const std::vector<CartanType>& types) {
  for (auto& t : types) check_type(t);
  rank_ = 0;
  for (auto& t : types) rank_ += t.rank;
  cartan_.assign(rank_, std::vector<long long>(rank_, 0));
  dsym_.assign(rank_, 1);
  coord_factor_.assign(rank_, 0);

  int base = 0;
  for (size_t f = 0; f < types.size(); ++f) {
    const CartanType& t = types[f];
    const int n = t.rank;
    auto C = [&](int i, int j) -> long long& { return cartan_[base + i - 1][base + j - 1]; };
    auto D = [&](int i) -> long long& { return dsym_[base + i - 1]; };
    for (int i = 1; i <= n; ++i) C(i, i) = 2;
    auto chain_edge = [&](int i, int j) { C(i, j) = -1; C(j, i) = -1; };
    switch (t.letter) {
      case 'A':
        for (int i = 1; i < n; ++i) chain_edge(i, i + 1);
        break;
      case 'B':  // alpha_n short
        for (int i = 1; i < n - 1; ++i) chain_edge(i, i + 1);
        C(n - 1, n) = -1;
        C(n, n - 1) = -2;
        for (int i = 1; i < n; ++i) D(i) = 2;
        break;
      case 'C':  // alpha_n long
        for (int i = 1; i < n - 1; ++i) chain_edge(i, i + 1);
        C(n - 1, n) = -2;
        C(n, n - 1) = -1;
        D(n) = 2;
        break;
      case 'D':
        for (int i = 1; i < n - 1; ++i) chain_edge(i, i + 1);
        chain_edge(n - 2, n);
        break;
      case 'E':
        chain_edge(1, 3);
        chain_edge(3, 4);
        chain_edge(2, 4);
        for (int i = 4; i < n; ++i) chain_edge(i, i + 1);
        break;
      case 'F':  // alpha_1, alpha_2 long
        chain_edge(1, 2);
        C(2, 3) = -1;
        C(3, 2) = -2;
        chain_edge(3, 4);
        D(1) = D(2) = 2;
        break;
      case 'G':  // alpha_1 short, alpha_2 long
        C(1, 2) = -3;
        C(2, 1) = -1;
        D(2) = 3;
        break;
    }
    FactorInfo fi;
    fi.type = t;
    fi.first_index = base;
    fi.rank = n;
    fi.weyl_order = weyl_order_of(t);
    factors_.push_back(fi);
    for (int i = 0; i < n; ++i) coord_factor_[base + i] = static_cast<int>(f);
    base += n;
  }
}

void RootSystem::generate_roots() {
  std::set<RootVec> all;
  std::vector<RootVec> frontier;
  for (int i = 0; i < rank_; ++i) {
    RootVec e(rank_, 0);
    e[i] = 1;
    all.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<RootVec> next;
    for (const RootVec& a : frontier) {
      for (int i = 0; i < rank_; ++i) {
        long long pair = 0;  // <alpha, alpha_i^vee>
        for (int j = 0; j < rank_; ++j) pair += cartan_[i][j] * a[j];
        RootVec b = a;
        b[i] -= pair;
        if (all.insert(b).second) next.push_back(b);
      }
    }
    frontier = std::move(next);
  }
  for (const RootVec& a : all) {
    bool pos = true;
    for (long long c : a) pos = pos && c >= 0;
    if (pos) positive_roots_.push_back(a);
  }
  std::sort(positive_roots_.begin(), positive_roots_.end(), [&](const RootVec& a, const RootVec& b) {
    long long ha = 0, hb = 0;
    for (auto c : a) ha += c;
    for (auto c : b) hb += c;
    if (ha != hb) return ha < hb;
    return a < b;
  });

  heights_.resize(positive_roots_.size());
  root_factor_.resize(positive_roots_.size());
  simple_index_.assign(rank_, -1);
  for (size_t k = 0; k < positive_roots_.size(); ++k) {
    long long h = 0;
    int fac = -1;
    for (int j = 0; j < rank_; ++j) {
      h += positive_roots_[k][j];
      if (positive_roots_[k][j] != 0) fac = coord_factor_[j];
    }
    heights_[k] = static_cast<int>(h);
    root_factor_[k] = fac;
    if (h == 1) {
      for (int j = 0; j < rank_; ++j)
        if (positive_roots_[k][j] == 1) simple_index_[j] = static_cast<int>(k);
    }
  }

  for (size_t f = 0; f < factors_.size(); ++f) {
    int best = -1;
    for (size_t k = 0; k < positive_roots_.size(); ++k)
      if (root_factor_[k] == static_cast<int>(f) && (best < 0 || heights_[k] > heights_[best]))
        best = static_cast<int>(k);
    factors_[f].highest_root = best;
    factors_[f].coxeter_number = heights_[best] + 1;
  }
}

void RootSystem::build_coroots() {
  coroots_.resize(positive_roots_.size());
  for (size_t k = 0; k < positive_roots_.size(); ++k) {
    const RootVec& a = positive_roots_[k];
    // (alpha, alpha)/2 with (alpha_i, alpha_j) = d_i * cartan_[i][j]
    long long norm2x2 = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) norm2x2 += a[i] * a[j] * dsym_[i] * cartan_[i][j];
    long long dalpha = norm2x2 / 2;
    Coweight cr(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
      if (a[i] == 0) continue;
      long long ci = a[i] * dsym_[i];
      if (ci % dalpha != 0) throw std::logic_error("coroot coefficients not integral");
      long long cvi = ci / dalpha;
      for (int j = 0; j < rank_; ++j) cr[j] += cvi * cartan_[i][j];
    }
    coroots_[k] = cr;
  }
  for (auto& fi : factors_) {
    AffineSeed seed;
    seed.root_index = fi.highest_root;
    seed.coroot = coroots_[fi.highest_root];
    affine_seeds_.push_back(seed);
  }

  // inverse of cartan^T for coroot-lattice membership tests
  int n = rank_;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rat(cartan_[j][i]);
    m[i][n + i] = Rat(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != Rat(0)) { piv = r; break; }
    if (piv < 0) throw std::logic_error("Cartan matrix singular");
    std::swap(m[col], m[piv]);
    Rat d = m[col][col];
    for (int j = 0; j < 2 * n; ++j) m[col][j] = m[col][j] / d;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == Rat(0)) continue;
      Rat f = m[r][col];
      for (int j = 0; j < 2 * n; ++j) m[r][j] = m[r][j] - f * m[col][j];
    }
  }
  cartan_inv_t_.assign(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_inv_t_[i][j] = m[i][n + j];
}

void RootSystem::build_vertices() {
  alcove_vertices_.resize(factors_.size());
  for (size_t f = 0; f < factors_.size(); ++f) {
    const FactorInfo& fi = factors_[f];
    QPoint zero(rank_, Rat(0));
    alcove_vertices_[f].push_back(zero);
    const RootVec& theta = positive_roots_[fi.highest_root];
    for (int j = 0; j < fi.rank; ++j) {
      long long c = theta[fi.first_index + j];
      QPoint v(rank_, Rat(0));
      v[fi.first_index + j] = Rat(1, c);
      alcove_vertices_[f].push_back(v);
    }
  }
}

RootSystem::RootSystem(const std::vector<CartanType>& types) {
  build_cartan(types);
  generate_roots();
  build_coroots();
  build_vertices();
}

long long RootSystem::pairing(const Coweight& lam, const RootVec& alpha) const {
  long long s = 0;
  for (int i = 0; i < rank_; ++i) s += alpha[i] * lam[i];
  return s;
}

Rat RootSystem::pairing(const QPoint& p, const RootVec& alpha) const {
  Rat s(0);
  for (int i = 0; i < rank_; ++i)
    if (alpha[i] != 0) s = s + Rat(alpha[i]) * p[i];
  return s;
}

long long RootSystem::pairing_root(const Coweight& lam, int k) const { return pairing(lam, positive_roots_[k]); }
Rat RootSystem::pairing_root(const QPoint& p, int k) const { return pairing(p, positive_roots_[k]); }

Coweight RootSystem::rho_check() const { return Coweight(rank_, 1); }

bool RootSystem::is_dominant(const Coweight& lam) const {
  for (int i = 0; i < rank_; ++i)
    if (lam[i] < 0) return false;
  return true;
}

bool RootSystem::is_strictly_dominant(const Coweight& lam) const {
  for (int i = 0; i < rank_; ++i)
    if (lam[i] <= 0) return false;
  return true;
}

bool RootSystem::in_coroot_lattice(const Coweight& v) const {
  // v = cartan^T c must have integral c
  for (int i = 0; i < rank_; ++i) {
    Rat ci(0);
    for (int j = 0; j < rank_; ++j) ci = ci + cartan_inv_t_[i][j] * Rat(v[j]);
    if (!ci.is_integer()) return false;
  }
  return true;
}

QPoint RootSystem::fundamental_alcove_point() const {
  QPoint p(rank_);
  for (int i = 0; i < rank_; ++i) p[i] = Rat(1, factors_[coord_factor_[i]].coxeter_number);
  return p;
}

long long RootSystem::weyl_group_order() const {
  long long r = 1;
  for (auto& f : factors_) r *= f.weyl_order;
  return r;
}

std::vector<RootSystem> RootSystem::decompose_irreducible(std::vector<std::vector<int>>* maps) const {
  std::vector<RootSystem> out;
  if (maps) maps->clear();
  for (auto& f : factors_) {
    out.push_back(RootSystem({f.type}));
    if (maps) {
      std::vector<int> m(f.rank);
      for (int j = 0; j < f.rank; ++j) m[j] = f.first_index + j;
      maps->push_back(m);
    }
  }
  return out;
}

Coweight RootSystem::project(const Coweight& lam, int f) const {
  const FactorInfo& fi = factors_[f];
  Coweight out(fi.rank);
  for (int j = 0; j < fi.rank; ++j) out[j] = lam[fi.first_index + j];
  return out;
}

std::string RootSystem::type_string() const {
  std::string s;
  for (size_t f = 0; f < factors_.size(); ++f) {
    if (f) s += "x";
    s += factors_[f].type.str();
  }
  return s;
}

}  // namespace linkage
