#pragma once

#include <cinfrbf/rational.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cinfrbf {

/// Dense integer polynomial, index = degree. Empty vector is the zero
/// polynomial; otherwise the top coefficient is nonzero.
using int_poly = std::vector<Int>;

namespace detail {

inline void ip_trim(int_poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int ip_degree(const int_poly& p) { return static_cast<int>(p.size()) - 1; }

inline int_poly ip_derivative(const int_poly& p) {
  if (p.size() <= 1) return {};
  int_poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<unsigned>(k);
  return d;
}

inline Int ip_content(const int_poly& p) {
  Int g = 0;
  for (const Int& c : p) g = boost::multiprecision::gcd(g, c);
  return g;
}

inline void ip_make_primitive(int_poly& p) {
  Int g = ip_content(p);
  if (g > 1)
    for (Int& c : p) c /= g;
}

/// Sign of p(num/den) for den > 0, via the homogenized integer value
/// den^deg(p) * p(num/den).
inline int ip_sign_at(const int_poly& p, const Rat& x) {
  if (p.empty()) return 0;
  const Int num = boost::multiprecision::numerator(x);
  const Int den = boost::multiprecision::denominator(x);
  Int acc = p.back();
  Int den_pow = 1;
  for (int k = ip_degree(p) - 1; k >= 0; --k) {
    den_pow *= den;
    acc = acc * num + p[static_cast<std::size_t>(k)] * den_pow;
  }
  return acc.sign();
}

/// Pseudo-remainder of a by b together with the sign of the implied
/// multiplier: returns (r, s) with lc(b)^k a = q b + r and s = sign(lc(b)^k).
inline std::pair<int_poly, int> ip_pseudo_rem(int_poly a, const int_poly& b) {
  ip_trim(a);
  const int nb = ip_degree(b);
  const Int& lb = b.back();
  int mult_sign = 1;
  while (ip_degree(a) >= nb) {
    const int na = ip_degree(a);
    const Int la = a.back();
    for (Int& c : a) c *= lb;
    for (int k = 0; k <= nb; ++k) a[static_cast<std::size_t>(na - nb + k)] -= la * b[static_cast<std::size_t>(k)];
    if (lb < 0) mult_sign = -mult_sign;
    ip_trim(a);
  }
  return {std::move(a), mult_sign};
}

/// Exact quotient of a by b in Z[x]; requires that b divides a.
inline int_poly ip_exact_div(int_poly a, const int_poly& b) {
  ip_trim(a);
  const int nb = ip_degree(b);
  if (nb < 0) throw std::invalid_argument("ip_exact_div: division by zero polynomial");
  int_poly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 1, Int(0));
  while (ip_degree(a) >= nb) {
    const int na = ip_degree(a);
    Int c = a.back() / b.back();
    q[static_cast<std::size_t>(na - nb)] = c;
    for (int k = 0; k <= nb; ++k) a[static_cast<std::size_t>(na - nb + k)] -= c * b[static_cast<std::size_t>(k)];
    ip_trim(a);
  }
  if (!a.empty()) throw std::logic_error("ip_exact_div: division was not exact");
  ip_trim(q);
  return q;
}

/// Primitive polynomial gcd (positive leading coefficient) via a
/// pseudo-remainder sequence.
inline int_poly ip_gcd(int_poly a, int_poly b) {
  ip_trim(a);
  ip_trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  ip_make_primitive(a);
  ip_make_primitive(b);
  if (ip_degree(a) < ip_degree(b)) std::swap(a, b);
  while (!b.empty()) {
    auto [r, s] = ip_pseudo_rem(a, b);
    ip_make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.back() < 0)
    for (Int& c : a) c = -c;
  return a;
}

}  // namespace detail

/// Sturm chain of a square-free primitive integer polynomial. Each member is
/// the negated remainder of the previous two, rescaled by a positive constant
/// (which preserves the sign-variation property).
class sturm_chain {
 public:
  explicit sturm_chain(int_poly squarefree) {
    detail::ip_trim(squarefree);
    if (squarefree.empty()) throw std::invalid_argument("sturm_chain: zero polynomial");
    chain_.push_back(std::move(squarefree));
    int_poly d = detail::ip_derivative(chain_.front());
    detail::ip_trim(d);
    if (d.empty()) return;
    detail::ip_make_primitive(d);
    chain_.push_back(std::move(d));
    while (detail::ip_degree(chain_.back()) > 0) {
      auto [r, mult_sign] = detail::ip_pseudo_rem(chain_[chain_.size() - 2], chain_.back());
      if (r.empty()) break;
      // next = -rem up to a positive factor; undo a negative pseudo-multiplier
      if (mult_sign > 0)
        for (Int& c : r) c = -c;
      detail::ip_make_primitive(r);
      chain_.push_back(std::move(r));
    }
  }

  /// Number of distinct real roots in (a, b]; a and b must not be roots.
  int count_roots(const Rat& a, const Rat& b) const { return variations(a) - variations(b); }

  int variations(const Rat& x) const {
    int var = 0, prev = 0;
    for (const int_poly& p : chain_) {
      const int s = detail::ip_sign_at(p, x);
      if (s != 0) {
        if (prev != 0 && s != prev) ++var;
        prev = s;
      }
    }
    return var;
  }

  const std::vector<int_poly>& members() const { return chain_; }

 private:
  std::vector<int_poly> chain_;
};

/// Root isolation output for a square-free polynomial on an interval:
/// disjoint open intervals containing exactly one root each (endpoints are
/// never roots), plus roots hit exactly by bisection with non-root sample
/// points flanking them.
struct root_isolation {
  std::vector<std::pair<Rat, Rat>> intervals;
  std::vector<Rat> exact_roots;
  std::vector<Rat> flank_samples;

  int root_count() const {
    return static_cast<int>(intervals.size() + exact_roots.size());
  }
};

namespace detail {

inline void isolate_rec(const int_poly& p, const sturm_chain& chain, const Rat& lo, const Rat& hi,
                        int count, root_isolation& out) {
  if (count == 0) return;
  if (count == 1) {
    out.intervals.emplace_back(lo, hi);
    return;
  }
  const Rat mid = (lo + hi) / 2;
  if (ip_sign_at(p, mid) == 0) {
    out.exact_roots.push_back(mid);
    // Shrink a symmetric window around mid until it contains no other root
    // and its endpoints are clean.
    Rat w = (hi - lo) / 4;
    while (ip_sign_at(p, mid - w) == 0 || ip_sign_at(p, mid + w) == 0 ||
           chain.count_roots(mid - w, mid + w) != 1)
      w /= 2;
    out.flank_samples.push_back(mid - w);
    out.flank_samples.push_back(mid + w);
    isolate_rec(p, chain, lo, mid - w, chain.count_roots(lo, mid - w), out);
    isolate_rec(p, chain, mid + w, hi, chain.count_roots(mid + w, hi), out);
  } else {
    const int left = chain.count_roots(lo, mid);
    isolate_rec(p, chain, lo, mid, left, out);
    isolate_rec(p, chain, mid, hi, count - left, out);
  }
}

/// Upper bound (strict) on the magnitude of all real roots.
inline Rat cauchy_bound(const int_poly& p) {
  Rat top(boost::multiprecision::abs(p.back()));
  Rat best(0);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    Rat r = Rat(boost::multiprecision::abs(p[k])) / top;
    if (r > best) best = r;
  }
  Rat bound = best + 1;
  // Round up to an integer so downstream arithmetic stays small.
  Int num = boost::multiprecision::numerator(bound);
  Int den = boost::multiprecision::denominator(bound);
  return Rat(num / den + 1);
}

}  // namespace detail

/// Isolates all roots of a square-free polynomial in (lo, hi); lo and hi must
/// not be roots.
inline root_isolation isolate_roots(const int_poly& squarefree, const Rat& lo, const Rat& hi) {
  sturm_chain chain(squarefree);
  root_isolation out;
  detail::isolate_rec(squarefree, chain, lo, hi, chain.count_roots(lo, hi), out);
  return out;
}

/// Outcome of the exact nonnegativity decision on [0, inf).
struct ray_verdict {
  bool nonnegative = false;
  bool trivially_zero = false;  // input was the zero polynomial
  Rat witness;                  // u* with p(u*) < 0 when !nonnegative
  Rat witness_value;            // exact p(u*)
  int isolated_roots = 0;       // distinct positive roots of the square-free part
};

namespace detail {

inline Rat rat_poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
  Rat acc(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace detail

/// Decides exactly whether p(u) >= 0 for every u in [0, inf), for a
/// univariate polynomial with rational coefficients.
///
/// Method: clear denominators, strip the u^k factor, and reduce to sign
/// inspection of the polynomial on the finitely many intervals delimited by
/// the real roots of its square-free part. Roots are isolated with Sturm
/// sequences; signs are read off by exact evaluation at rational points that
/// provably avoid every root (one sample per maximal sign region, including
/// 0 on the left and a point beyond the Cauchy bound on the right). Any
/// negative sample is returned as an exact counterexample.
inline ray_verdict sturm_nonneg_on_ray(const std::vector<Rat>& coeffs) {
  ray_verdict out;

  // Clear denominators into a primitive integer polynomial.
  int_poly p;
  {
    Int lcm = 1;
    for (const Rat& c : coeffs) {
      Int den = boost::multiprecision::denominator(c);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    p.reserve(coeffs.size());
    for (const Rat& c : coeffs)
      p.push_back(boost::multiprecision::numerator(c) * (lcm / boost::multiprecision::denominator(c)));
    detail::ip_trim(p);
  }
  if (p.empty()) {
    out.nonnegative = true;
    out.trivially_zero = true;
    return out;
  }
  detail::ip_make_primitive(p);

  auto counterexample_at = [&](const Rat& u) {
    out.nonnegative = false;
    out.witness = u;
    out.witness_value = detail::rat_poly_eval(coeffs, u);
  };

  // p = u^k q with q(0) != 0; on u > 0 the signs of p and q agree.
  std::size_t k0 = 0;
  while (p[k0] == 0) ++k0;
  int_poly q(p.begin() + static_cast<std::ptrdiff_t>(k0), p.end());

  if (q[0] < 0) {
    if (k0 == 0) {
      counterexample_at(Rat(0));
      return out;
    }
    // q is negative at 0, hence just right of it; walk a dyadic point in.
    Rat eps(1);
    while (detail::ip_sign_at(q, eps) >= 0) eps /= 2;
    counterexample_at(eps);
    return out;
  }

  // Square-free part of q.
  int_poly g = detail::ip_gcd(q, detail::ip_derivative(q));
  int_poly s = detail::ip_degree(g) > 0 ? detail::ip_exact_div(q, g) : q;
  if (s.back() < 0)
    for (Int& c : s) c = -c;

  const Rat bound = detail::cauchy_bound(s);
  root_isolation iso = isolate_roots(s, Rat(0), bound);
  out.isolated_roots = iso.root_count();

  // One exact sample per maximal sign region of q on [0, bound], plus the
  // region beyond the last root.
  std::vector<Rat> samples;
  samples.reserve(2 * iso.intervals.size() + iso.flank_samples.size() + 2);
  samples.emplace_back(0);
  for (const auto& [a, b] : iso.intervals) {
    samples.push_back(a);
    samples.push_back(b);
  }
  for (const Rat& f : iso.flank_samples) samples.push_back(f);
  samples.push_back(bound);
  std::sort(samples.begin(), samples.end());

  for (const Rat& x : samples) {
    if (detail::ip_sign_at(q, x) < 0) {
      counterexample_at(x);
      return out;
    }
  }
  out.nonnegative = true;
  return out;
}

}  // namespace cinfrbf
