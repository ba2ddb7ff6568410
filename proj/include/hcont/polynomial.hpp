#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hcont {

/// Dense univariate polynomial over the rationals, coefficients stored low to high.
/// The coefficient vector never carries trailing zeros; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(Rational v) { return Polynomial({std::move(v)}); }
  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }
  /// (x - root)
  static Polynomial linear_root(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const noexcept { return c_.size() <= 1; }

  Rational coefficient(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
  }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long long>(k));
    return Polynomial(std::move(d));
  }

  /// p(x + shift)
  Polynomial shifted(const Rational& shift) const {
    // Taylor shift by repeated synthetic division.
    std::vector<Rational> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] += shift * a[j];
    return Polynomial(std::move(a));
  }

  /// p(-x)
  Polynomial reflected() const {
    std::vector<Rational> a = c_;
    for (std::size_t k = 1; k < a.size(); k += 2) a[k] = -a[k];
    return Polynomial(std::move(a));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    Rational lc = leading();
    std::vector<Rational> a = c_;
    for (auto& v : a) v /= lc;
    return Polynomial(std::move(a));
  }

  Polynomial operator-() const {
    std::vector<Rational> a = c_;
    for (auto& v : a) v = -v;
    return Polynomial(std::move(a));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> a(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < p.c_.size(); ++k) a[k] += p.c_[k];
    for (std::size_t k = 0; k < q.c_.size(); ++k) a[k] += q.c_[k];
    return Polynomial(std::move(a));
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> a(p.c_.size() + q.c_.size() - 1);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) a[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(std::move(a));
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> a = p.c_;
    for (auto& v : a) v *= s;
    return Polynomial(std::move(a));
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(1), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division: p = quotient * d + remainder, deg(remainder) < deg(d).
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& d) {
    std::vector<Rational> rem = p.c_;
    const int dd = d.degree();
    if (p.degree() < dd) return {Polynomial{}, p};
    std::vector<Rational> quo(static_cast<std::size_t>(p.degree() - dd + 1));
    for (int k = p.degree() - dd; k >= 0; --k) {
      Rational f = rem[static_cast<std::size_t>(k + dd)] / d.leading();
      quo[static_cast<std::size_t>(k)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Monic greatest common divisor (zero only when both inputs are zero).
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  /// Integer coefficients with the same roots: scaled by the lcm of denominators and
  /// divided by the content.
  std::vector<Integer> primitive_integer() const {
    Integer l = 1;
    for (const auto& v : c_) l = boost::multiprecision::lcm(l, denominator_of(v));
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& v : c_) {
      Integer n = numerator_of(v) * (l / denominator_of(v));
      out.push_back(n);
      g = boost::multiprecision::gcd(g, n);
    }
    if (g != 0)
      for (auto& n : out) n /= g;
    return out;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const Rational& v = c_[static_cast<std::size_t>(k)];
      if (v == 0) continue;
      if (!s.empty()) s += v.sign() < 0 ? " - " : " + ";
      else if (v.sign() < 0) s += "-";
      Rational a = hcont::abs(v);
      bool unit = a == 1 && k > 0;
      if (!unit) s += hcont::to_string(a);
      if (k > 0) s += (unit ? "" : "*") + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// p / gcd(p, p'): same roots, all simple.
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 1) return p.monic();
  Polynomial g = Polynomial::gcd(p, p.derivative());
  return Polynomial::divmod(p, g).first.monic();
}

}  // namespace hcont
