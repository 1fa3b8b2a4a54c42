#pragma once

// Sparse bivariate polynomials over Q.  Supports the pullback substitutions
// used by chart transitions (x,y) -> (c1 + A(u1,u2), c2 + B(u1,u2)),
// homogeneous lowest-degree forms, exact division, and Res_y elimination.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igusa/errors.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (deg in x, deg in y)

  BiPoly() = default;
  static BiPoly constant(const Rat& a) {
    BiPoly r;
    r.add_term(0, 0, a);
    return r;
  }
  static BiPoly var_x() {
    BiPoly r;
    r.add_term(1, 0, Rat(1));
    return r;
  }
  static BiPoly var_y() {
    BiPoly r;
    r.add_term(0, 1, Rat(1));
    return r;
  }
  static BiPoly monomial(int i, int j, const Rat& a) {
    BiPoly r;
    r.add_term(i, j, a);
    return r;
  }
  static BiPoly from_x_poly(const UniPoly& f) {
    BiPoly r;
    for (int i = 0; i <= f.deg(); ++i) r.add_term(i, 0, f[i]);
    return r;
  }
  static BiPoly from_y_poly(const UniPoly& f) {
    BiPoly r;
    for (int j = 0; j <= f.deg(); ++j) r.add_term(0, j, f[j]);
    return r;
  }

  void add_term(int i, int j, const Rat& a) {
    if (a.is_zero()) return;
    auto it = t_.find({i, j});
    if (it == t_.end()) {
      t_.emplace(Key{i, j}, a);
    } else {
      it->second += a;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  const std::map<Key, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0});
  }
  Rat coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? Rat(0) : it->second;
  }

  int deg_x() const {
    int d = -1;
    for (const auto& [k, a] : t_) d = std::max(d, k.first);
    return d;
  }
  int deg_y() const {
    int d = -1;
    for (const auto& [k, a] : t_) d = std::max(d, k.second);
    return d;
  }
  int total_deg() const {
    int d = -1;
    for (const auto& [k, a] : t_) d = std::max(d, k.first + k.second);
    return d;
  }
  // Minimal total degree of a term (-1 for 0); its terms form lowest_form().
  int min_total_deg() const {
    int d = -1;
    for (const auto& [k, a] : t_)
      if (d < 0 || k.first + k.second < d) d = k.first + k.second;
    return d;
  }
  int min_deg_x() const {
    int d = -1;
    for (const auto& [k, a] : t_)
      if (d < 0 || k.first < d) d = k.first;
    return d;
  }
  int min_deg_y() const {
    int d = -1;
    for (const auto& [k, a] : t_)
      if (d < 0 || k.second < d) d = k.second;
    return d;
  }

  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [k, a] : t_) r.t_.emplace(k, -a);
    return r;
  }
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k.first, k.second, c);
    return r;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    return a + (-b);
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_)
        r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const Rat& s) {
    if (s.is_zero()) return BiPoly();
    BiPoly r;
    for (const auto& [k, c] : a.t_) r.t_.emplace(k, c * s);
    return r;
  }
  friend BiPoly operator*(const Rat& s, const BiPoly& a) { return a * s; }
  BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
  BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.t_ == b.t_;
  }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) {
    return !(a == b);
  }

  BiPoly pow(int e) const {
    require(e >= 0, ErrorCode::DomainError, "negative polynomial power");
    BiPoly r = BiPoly::constant(Rat(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  Rat eval(const Rat& x, const Rat& y) const {
    // Cache powers to keep repeated evaluation cheap.
    int dx = std::max(deg_x(), 0), dy = std::max(deg_y(), 0);
    std::vector<Rat> px(static_cast<size_t>(dx) + 1, Rat(1));
    std::vector<Rat> py(static_cast<size_t>(dy) + 1, Rat(1));
    for (int i = 1; i <= dx; ++i) px[static_cast<size_t>(i)] = px[i - 1] * x;
    for (int j = 1; j <= dy; ++j) py[static_cast<size_t>(j)] = py[j - 1] * y;
    Rat r(0);
    for (const auto& [k, a] : t_)
      r += a * px[static_cast<size_t>(k.first)] *
           py[static_cast<size_t>(k.second)];
    return r;
  }

  BiPoly d_dx() const {
    BiPoly r;
    for (const auto& [k, a] : t_)
      if (k.first > 0) r.add_term(k.first - 1, k.second, a * Rat(k.first));
    return r;
  }
  BiPoly d_dy() const {
    BiPoly r;
    for (const auto& [k, a] : t_)
      if (k.second > 0) r.add_term(k.first, k.second - 1, a * Rat(k.second));
    return r;
  }

  // Substitute x <- X, y <- Y (both bivariate in the new variables).
  BiPoly subst(const BiPoly& X, const BiPoly& Y) const {
    std::vector<BiPoly> px{BiPoly::constant(Rat(1))};
    std::vector<BiPoly> py{BiPoly::constant(Rat(1))};
    auto power = [](std::vector<BiPoly>& cache, const BiPoly& base, int e) {
      while (static_cast<int>(cache.size()) <= e)
        cache.push_back(cache.back() * base);
      return cache[static_cast<size_t>(e)];
    };
    BiPoly r;
    for (const auto& [k, a] : t_)
      r += a * power(px, X, k.first) * power(py, Y, k.second);
    return r;
  }

  BiPoly swap_vars() const {
    BiPoly r;
    for (const auto& [k, a] : t_) r.t_.emplace(Key{k.second, k.first}, a);
    return r;
  }

  // Specialize one variable.
  UniPoly eval_x(const Rat& x0) const {  // result is a polynomial in y
    std::vector<Rat> c(static_cast<size_t>(std::max(deg_y(), 0)) + 1, Rat(0));
    for (const auto& [k, a] : t_)
      c[static_cast<size_t>(k.second)] += a * x0.pow(k.first);
    return UniPoly(std::move(c));
  }
  UniPoly eval_y(const Rat& y0) const {  // result is a polynomial in x
    std::vector<Rat> c(static_cast<size_t>(std::max(deg_x(), 0)) + 1, Rat(0));
    for (const auto& [k, a] : t_)
      c[static_cast<size_t>(k.first)] += a * y0.pow(k.second);
    return UniPoly(std::move(c));
  }

  // Coefficient of y^j as a polynomial in x.
  UniPoly coeff_of_y(int j) const {
    std::vector<Rat> c(static_cast<size_t>(std::max(deg_x(), 0)) + 1, Rat(0));
    bool any = false;
    for (const auto& [k, a] : t_)
      if (k.second == j) {
        c[static_cast<size_t>(k.first)] = a;
        any = true;
      }
    if (!any) return UniPoly();
    return UniPoly(std::move(c));
  }
  std::vector<UniPoly> y_coeffs() const {
    std::vector<UniPoly> out(static_cast<size_t>(std::max(deg_y(), -1)) + 1);
    for (int j = 0; j <= deg_y(); ++j) out[static_cast<size_t>(j)] = coeff_of_y(j);
    return out;
  }
  static BiPoly from_y_coeffs(const std::vector<UniPoly>& cs) {
    BiPoly r;
    for (size_t j = 0; j < cs.size(); ++j)
      for (int i = 0; i <= cs[j].deg(); ++i)
        r.add_term(i, static_cast<int>(j), cs[j][i]);
    return r;
  }

  // Sum of the terms of minimal total degree (homogeneous).
  BiPoly lowest_form() const {
    BiPoly r;
    int d = min_total_deg();
    for (const auto& [k, a] : t_)
      if (k.first + k.second == d) r.t_.emplace(k, a);
    return r;
  }

  bool is_homogeneous() const {
    return is_zero() || min_total_deg() == total_deg();
  }

  // Divide by x^k (must divide exactly).
  BiPoly shift_down_x(int k) const {
    require(k == 0 || min_deg_x() >= k, ErrorCode::InternalInvariant,
            "x-power does not divide");
    BiPoly r;
    for (const auto& [key, a] : t_)
      r.t_.emplace(Key{key.first - k, key.second}, a);
    return r;
  }
  BiPoly shift_down_y(int k) const {
    require(k == 0 || min_deg_y() >= k, ErrorCode::InternalInvariant,
            "y-power does not divide");
    BiPoly r;
    for (const auto& [key, a] : t_)
      r.t_.emplace(Key{key.first, key.second - k}, a);
    return r;
  }

  // Exact division in Q[x,y]; nullopt if b does not divide a.
  static std::optional<BiPoly> try_div_exact(const BiPoly& a, const BiPoly& b);
  static BiPoly div_exact(const BiPoly& a, const BiPoly& b) {
    auto q = try_div_exact(a, b);
    require(q.has_value(), ErrorCode::InternalInvariant,
            "inexact bivariate division");
    return *q;
  }

  // Rescale so all coefficients are integers with unit content and the
  // lexicographically-last term is positive.
  BiPoly primitive() const {
    if (is_zero()) return *this;
    Int l(1);
    for (const auto& [k, a] : t_) l = int_lcm(l, a.den());
    Int g(0);
    for (const auto& [k, a] : t_) g = int_gcd(g, a.num() * (l / a.den()));
    Rat s = Rat(l, g);
    if (t_.rbegin()->second.sign() < 0) s = -s;
    return *this * s;
  }

  std::string str(const std::string& vx = "x",
                  const std::string& vy = "y") const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [k, a] = *it;
      Rat mag = a.abs();
      if (out.empty()) {
        if (a.sign() < 0) out += "-";
      } else {
        out += a.sign() < 0 ? " - " : " + ";
      }
      bool unit = (mag == Rat(1));
      bool has_var = k.first > 0 || k.second > 0;
      if (!has_var || !unit) out += mag.str();
      bool need_star = !unit;
      auto emit = [&](const std::string& v, int e) {
        if (e == 0) return;
        if (need_star) out += "*";
        out += v;
        if (e > 1) out += "^" + std::to_string(e);
        need_star = true;
      };
      emit(vx, k.first);
      emit(vy, k.second);
    }
    return out;
  }

 private:
  std::map<Key, Rat> t_;
};

inline std::optional<BiPoly> BiPoly::try_div_exact(const BiPoly& a,
                                                   const BiPoly& b) {
  require(!b.is_zero(), ErrorCode::DomainError, "bivariate division by 0");
  if (a.is_zero()) return BiPoly();
  // Division in (Q[x])[y]: each step divides leading y-coefficients in Q[x];
  // when the quotient exists in Q[x,y] every step is exact.
  std::vector<UniPoly> ra = a.y_coeffs();
  std::vector<UniPoly> rb = b.y_coeffs();
  int db = static_cast<int>(rb.size()) - 1;
  while (db >= 0 && rb[static_cast<size_t>(db)].is_zero()) --db;
  int da = static_cast<int>(ra.size()) - 1;
  while (da >= 0 && ra[static_cast<size_t>(da)].is_zero()) --da;
  if (da < db) return std::nullopt;
  const UniPoly& lb = rb[static_cast<size_t>(db)];
  std::vector<UniPoly> q(static_cast<size_t>(da - db) + 1);
  for (int i = da; i >= db; --i) {
    UniPoly& ri = ra[static_cast<size_t>(i)];
    if (ri.is_zero()) continue;
    auto [qi, rem] = UniPoly::divmod(ri, lb);
    if (!rem.is_zero()) return std::nullopt;
    q[static_cast<size_t>(i - db)] = qi;
    for (int j = 0; j <= db; ++j)
      ra[static_cast<size_t>(i - db + j)] =
          ra[static_cast<size_t>(i - db + j)] - qi * rb[static_cast<size_t>(j)];
  }
  for (const auto& rem : ra)
    if (!rem.is_zero()) return std::nullopt;
  return BiPoly::from_y_coeffs(q);
}

// Res_y(f, g) as a polynomial in x, by interpolation at integer sample
// points where neither leading y-coefficient vanishes.
inline UniPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  require(!f.is_zero() && !g.is_zero(), ErrorCode::DomainError,
          "resultant of zero polynomial");
  int m = f.deg_y(), n = g.deg_y();
  if (m == 0 && n == 0) return UniPoly::constant(Rat(1));
  if (m == 0) return f.coeff_of_y(0).pow(n);
  if (n == 0) return g.coeff_of_y(0).pow(m);
  UniPoly lf = f.coeff_of_y(m), lg = g.coeff_of_y(n);
  int dbound = f.deg_x() * n + g.deg_x() * m;
  std::vector<Rat> xs, ys;
  long trial = 0;
  while (static_cast<int>(xs.size()) <= dbound) {
    Rat x0(trial);
    trial = trial <= 0 ? -trial + 1 : -trial;  // 0, 1, -1, 2, -2, ...
    if (lf.eval(x0).is_zero() || lg.eval(x0).is_zero()) continue;
    xs.push_back(x0);
    ys.push_back(resultant(f.eval_x(x0), g.eval_x(x0)));
  }
  // Newton-form interpolation.
  size_t npts = xs.size();
  std::vector<Rat> dd = ys;  // divided differences, built in place
  for (size_t lvl = 1; lvl < npts; ++lvl)
    for (size_t i = npts - 1; i >= lvl; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
  UniPoly result = UniPoly::constant(dd[npts - 1]);
  for (size_t i = npts - 1; i-- > 0;)
    result = result * UniPoly::linear(-xs[i], Rat(1)) +
             UniPoly::constant(dd[i]);
  return result;
}

}  // namespace igusa
