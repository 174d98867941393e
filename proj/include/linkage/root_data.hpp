#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkage/rational.hpp"

namespace linkage {

struct CartanType {
  char letter = 'A';  // A B C D E F G
  int rank = 1;
  std::string str() const { return std::string(1, letter) + std::to_string(rank); }
};

// Parses "A1", "c2", "A1xC2", "E8xA1" (case-insensitive, 'x' separator).
std::vector<CartanType> parse_cartan_types(const std::string& s);

// A root in simple-root coordinates (global simple-root indexing).
using RootVec = std::vector<long long>;

struct FactorInfo {
  CartanType type;
  int first_index = 0;          // first simple-root index of this factor
  int rank = 0;
  int highest_root = -1;        // index into positive_roots
  int coxeter_number = 0;       // height(highest root) + 1
  long long weyl_order = 0;     // |W_0| of the factor
};

// Root-system data in coordinates where the coweight lattice X^vee is Z^rank
// in the fundamental-coweight basis, so <lambda, alpha_i> reads off
// coordinate i. Immutable after construction.
class RootSystem {
 public:
  explicit RootSystem(const std::vector<CartanType>& types);

  int rank() const { return rank_; }
  const std::vector<FactorInfo>& factors() const { return factors_; }
  const std::vector<std::vector<long long>>& cartan() const { return cartan_; }
  long long symmetrizer(int i) const { return dsym_[i]; }  // (alpha_i, alpha_i)/2, short = 1

  // Positive roots as simple-root coefficient vectors, sorted by
  // (height, coefficients); the first `rank` entries are the simple roots.
  const std::vector<RootVec>& positive_roots() const { return positive_roots_; }
  int num_positive_roots() const { return static_cast<int>(positive_roots_.size()); }
  int simple_root_index(int i) const { return simple_index_[i]; }
  int height(int root_index) const { return heights_[root_index]; }
  int factor_of_root(int root_index) const { return root_factor_[root_index]; }
  int factor_of_coordinate(int i) const { return coord_factor_[i]; }

  // Coroot of positive_roots()[k], in fundamental-coweight coordinates.
  const Coweight& coroot(int root_index) const { return coroots_[root_index]; }

  // <lambda, alpha> for alpha in simple-root coefficients.
  long long pairing(const Coweight& lam, const RootVec& alpha) const;
  Rat pairing(const QPoint& p, const RootVec& alpha) const;
  long long pairing_root(const Coweight& lam, int root_index) const;
  Rat pairing_root(const QPoint& p, int root_index) const;

  Coweight rho_check() const;  // all-ones vector

  bool is_dominant(const Coweight& lam) const;
  bool is_strictly_dominant(const Coweight& lam) const;

  // Per factor: (highest root beta, its coroot beta^vee); beta^vee is the
  // largest short root of the corresponding factor of the dual system.
  struct AffineSeed { int root_index; Coweight coroot; };
  const std::vector<AffineSeed>& highest_short_coroots() const { return affine_seeds_; }

  // True iff v lies in the coroot lattice ZR^vee.
  bool in_coroot_lattice(const Coweight& v) const;

  // Exact interior point of the fundamental alcove (rho^vee scaled per factor
  // by the factor's Coxeter number).
  QPoint fundamental_alcove_point() const;

  // Vertices of the closed fundamental alcove, one simplex per factor:
  // vertex 0 plus varpi_j^vee / c_j (c_j = highest-root coefficient),
  // embedded in the full space with other coordinates 0. Used to take
  // barycenters of faces.
  const std::vector<std::vector<QPoint>>& alcove_vertices_by_factor() const { return alcove_vertices_; }

  long long weyl_group_order() const;

  // Splits into irreducible factors; maps[i] lists the global coordinate
  // indices of factor i.
  std::vector<RootSystem> decompose_irreducible(std::vector<std::vector<int>>* maps = nullptr) const;

  // Projection of a coweight to factor f's coordinates.
  Coweight project(const Coweight& lam, int f) const;

  std::string type_string() const;

 private:
  int rank_ = 0;
  std::vector<FactorInfo> factors_;
  std::vector<std::vector<long long>> cartan_;  // cartan_[i][j] = <alpha_i^vee, alpha_j>
  std::vector<long long> dsym_;                 // symmetrizing d_i, short roots = 1
  std::vector<RootVec> positive_roots_;
  std::vector<Coweight> coroots_;
  std::vector<int> heights_;
  std::vector<int> simple_index_;
  std::vector<int> root_factor_;
  std::vector<int> coord_factor_;
  std::vector<AffineSeed> affine_seeds_;
  std::vector<std::vector<QPoint>> alcove_vertices_;
  // Transposed-inverse Cartan data for coroot-lattice membership: row-reduced
  // exact solve is done on demand against this matrix.
  std::vector<std::vector<Rat>> cartan_inv_t_;

  void build_cartan(const std::vector<CartanType>& types);
  void generate_roots();
  void build_coroots();
  void build_vertices();
};

}  // namespace linkage
