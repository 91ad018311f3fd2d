#pragma once

#include <cinfrbf/rational.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cinfrbf {

/// Exact bivariate polynomial in (a, u) with arbitrary-size integer
/// coefficients. Canonical form: zero coefficients are never stored, so two
/// polynomials are equal iff their term maps are equal.
class bivar_poly {
 public:
  // (degree in a, degree in u) -> coefficient
  using term_map = std::map<std::pair<int, int>, Int>;

  bivar_poly() = default;

  static bivar_poly monomial(Int coeff, int deg_a, int deg_u) {
    bivar_poly p;
    if (coeff != 0) p.terms_[{deg_a, deg_u}] = std::move(coeff);
    return p;
  }

  static bivar_poly constant(Int c) { return monomial(std::move(c), 0, 0); }

  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coeff(int deg_a, int deg_u) const {
    auto it = terms_.find({deg_a, deg_u});
    return it == terms_.end() ? Int(0) : it->second;
  }

  int degree_a() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
  }

  int degree_u() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
  }

  friend bool operator==(const bivar_poly& p, const bivar_poly& q) { return p.terms_ == q.terms_; }

  friend bivar_poly operator+(const bivar_poly& p, const bivar_poly& q) {
    bivar_poly r = p;
    for (const auto& [e, c] : q.terms_) r.add_term(e.first, e.second, c);
    return r;
  }

  friend bivar_poly operator-(const bivar_poly& p, const bivar_poly& q) {
    bivar_poly r = p;
    for (const auto& [e, c] : q.terms_) r.add_term(e.first, e.second, -c);
    return r;
  }

  friend bivar_poly operator*(const bivar_poly& p, const bivar_poly& q) {
    bivar_poly r;
    for (const auto& [ep, cp] : p.terms_)
      for (const auto& [eq, cq] : q.terms_)
        r.add_term(ep.first + eq.first, ep.second + eq.second, cp * cq);
    return r;
  }

  /// Formal partial derivative with respect to u.
  bivar_poly d_du() const {
    bivar_poly r;
    for (const auto& [e, c] : terms_)
      if (e.second > 0) r.add_term(e.first, e.second - 1, c * e.second);
    return r;
  }

  /// Exact evaluation at rational (a, u).
  Rat eval(const Rat& a, const Rat& u) const {
    std::vector<Rat> pow_a = power_table(a, degree_a());
    std::vector<Rat> pow_u = power_table(u, degree_u());
    Rat acc(0);
    for (const auto& [e, c] : terms_) acc += Rat(c) * pow_a[e.first] * pow_u[e.second];
    return acc;
  }

  /// Substitutes a fixed rational a, producing the dense coefficient list of
  /// the resulting univariate polynomial in u (index = degree in u).
  std::vector<Rat> restrict_a(const Rat& a) const {
    std::vector<Rat> coeffs(static_cast<std::size_t>(degree_u()) + 1, Rat(0));
    std::vector<Rat> pow_a = power_table(a, degree_a());
    for (const auto& [e, c] : terms_) coeffs[e.second] += Rat(c) * pow_a[e.first];
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
  }

  /// Terms joined by " + " / " - ", exponent pairs (i,k) descending
  /// lexicographically: "4*a*u^4 + ... + 2*u + 2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // std::map iterates ascending; walk it backwards for descending (i,k).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool first = out.empty();
      const bool neg = c < 0;
      if (!first) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      Int mag = neg ? Int(-c) : c;
      std::string term = mag.str();
      if (e.first > 0) term += "*a" + (e.first > 1 ? "^" + std::to_string(e.first) : "");
      if (e.second > 0) term += "*u" + (e.second > 1 ? "^" + std::to_string(e.second) : "");
      out += term;
    }
    return out;
  }

 private:
  void add_term(int deg_a, int deg_u, Int delta) {
    if (delta == 0) return;
    auto key = std::make_pair(deg_a, deg_u);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, std::move(delta));
    } else {
      it->second += delta;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static std::vector<Rat> power_table(const Rat& x, int max_deg) {
    std::vector<Rat> p(static_cast<std::size_t>(max_deg) + 1);
    p[0] = 1;
    for (int i = 1; i <= max_deg; ++i) p[i] = p[i - 1] * x;
    return p;
  }

  term_map terms_;
};

struct leading_term_info {
  Int a_j;       // coefficient of a^(j-1) u^(3(j-1)+1), strictly positive
  int deg_a;     // j-1
  int deg_u;     // 3(j-1)+1
};

/// First derivative profile polynomial: F_1 = 2u + 2.
inline bivar_poly f_seed() {
  bivar_poly p = bivar_poly::monomial(2, 0, 1) + bivar_poly::constant(2);
  return p;
}

/// One differentiation step of the profile chain:
///   F_{j+1} = 2a(1+u)(1+u^2) F_j - 2u F_j - (1+u^2) dF_j/du.
inline bivar_poly f_next(const bivar_poly& fj) {
  static const bivar_poly one_plus_u = bivar_poly::constant(1) + bivar_poly::monomial(1, 0, 1);
  static const bivar_poly one_plus_u2 = bivar_poly::constant(1) + bivar_poly::monomial(1, 0, 2);
  static const bivar_poly two_a = bivar_poly::monomial(2, 1, 0);
  static const bivar_poly two_u = bivar_poly::monomial(2, 0, 1);
  return two_a * one_plus_u * one_plus_u2 * fj - two_u * fj - one_plus_u2 * fj.d_du();
}

/// [F_1, ..., F_l].
inline std::vector<bivar_poly> f_sequence(int l) {
  if (l < 1) throw std::domain_error("f_sequence: order must be >= 1");
  std::vector<bivar_poly> seq;
  seq.reserve(static_cast<std::size_t>(l));
  seq.push_back(f_seed());
  for (int j = 1; j < l; ++j) seq.push_back(f_next(seq.back()));
  return seq;
}

/// Extracts the sign-carrying top monomial a^(j-1) u^(3(j-1)+1) of F_j.
/// Throws if the polynomial does not have the expected degree box or the
/// coefficient is missing or nonpositive.
inline leading_term_info leading_term(const bivar_poly& p) {
  const int da = p.degree_a();
  const int du = p.degree_u();
  if (du != 3 * da + 1)
    throw std::logic_error("leading_term: degree box (" + std::to_string(da) + "," +
                           std::to_string(du) + ") is not (j-1, 3(j-1)+1)");
  Int c = p.coeff(da, du);
  if (c <= 0)
    throw std::logic_error("leading_term: monomial a^" + std::to_string(da) + "*u^" +
                           std::to_string(du) + " missing or nonpositive");
  return {std::move(c), da, du};
}

struct term_diff_entry {
  int deg_a = 0;
  int deg_u = 0;
  Int lhs;  // coefficient in the first polynomial (0 if absent)
  Int rhs;  // coefficient in the second
};

/// Term-by-term structural diff, suitable for reporting how a hand-written
/// expansion deviates from the generated one. Empty result means equality.
inline std::vector<term_diff_entry> term_diff(const bivar_poly& p, const bivar_poly& q) {
  std::vector<term_diff_entry> out;
  auto ip = p.terms().begin();
  auto iq = q.terms().begin();
  while (ip != p.terms().end() || iq != q.terms().end()) {
    if (iq == q.terms().end() || (ip != p.terms().end() && ip->first < iq->first)) {
      out.push_back({ip->first.first, ip->first.second, ip->second, 0});
      ++ip;
    } else if (ip == p.terms().end() || iq->first < ip->first) {
      out.push_back({iq->first.first, iq->first.second, 0, iq->second});
      ++iq;
    } else {
      if (ip->second != iq->second)
        out.push_back({ip->first.first, ip->first.second, ip->second, iq->second});
      ++ip;
      ++iq;
    }
  }
  return out;
}

}  // namespace cinfrbf
