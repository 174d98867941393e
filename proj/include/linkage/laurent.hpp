#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace linkage {

// Sparse Laurent polynomial over Z in the variable v. No zero coefficients
// are ever stored, so equality is map equality.
class Laurent {
 public:
  using Terms = std::map<int, long long>;  // exponent -> coefficient

  Laurent() = default;
  explicit Laurent(long long c) { if (c != 0) terms_[0] = c; }
  static Laurent monomial(long long c, int exp) {
    Laurent p;
    if (c != 0) p.terms_[exp] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }

  long long coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(int exp, long long c) {
    if (c == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
      terms_[exp] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Laurent& operator+=(const Laurent& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  friend bool operator<(const Laurent& a, const Laurent& b) { return a.terms_ < b.terms_; }

  // v -> v^{-1}
  Laurent bar() const {
    Laurent r;
    for (auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
  }

  long long eval_one() const {
    long long s = 0;
    for (auto& [e, c] : terms_) s += c;
    return s;
  }

  int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  // true iff every term has exponent >= 1
  bool in_v_zpos() const { return terms_.empty() || min_exp() >= 1; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [e, c] : terms_) {
      if (!s.empty()) s += c >= 0 ? "+" : "";
      s += std::to_string(c);
      if (e != 0) s += "v^" + std::to_string(e);
    }
    return s;
  }

 private:
  Terms terms_;
};

}  // namespace linkage
