#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace linkage {

// Exact rational with 64-bit parts. All geometry in this project happens at
// tiny magnitudes (alcove coordinates, 1/l scalings), so no bignum is needed;
// overflow aborts loudly instead of wrapping.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  Rat operator-() const { return Rat(-num, den); }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // floor(num/den)
  long long floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Point of E = X^vee (x) R in the fundamental-coweight basis, exact.
using QPoint = std::vector<Rat>;
// Integer coweight in the same basis.
using Coweight = std::vector<long long>;

inline QPoint to_qpoint(const Coweight& v) {
  QPoint p(v.size());
  for (size_t i = 0; i < v.size(); ++i) p[i] = Rat(v[i]);
  return p;
}

}  // namespace linkage
