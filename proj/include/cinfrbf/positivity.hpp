#pragma once

#include <cinfrbf/bivar_poly.hpp>
#include <cinfrbf/sturm.hpp>

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cinfrbf {

enum class cert_verdict { proven_nonnegative, counterexample };
enum class cert_method { sturm_exact, grid_prescreen };

/// Rigorous verdict on F_j(alpha, u) >= 0 over u in [0, inf) at a fixed
/// rational alpha. A counterexample always re-evaluates negative under exact
/// rational arithmetic.
struct sign_certificate {
  int order = 0;  // j
  Rat alpha;
  cert_verdict verdict = cert_verdict::counterexample;
  cert_method method = cert_method::sturm_exact;
  Rat u_star;           // counterexample location
  Rat value;            // exact F_j(alpha, u_star)
  bool trivially_zero = false;
  int isolated_roots = 0;
  double wall_ms = 0.0;

  bool proven() const { return verdict == cert_verdict::proven_nonnegative; }
};

/// Aggregated derivative-sign report for dimension d: certificates for
/// j = 1..l with l = floor(d/2) + 2 (order j = 0 is automatic since the
/// profile itself is nonnegative).
struct dimension_report {
  int dim = 0;
  int derivative_order = 0;  // l
  Rat alpha;
  std::vector<sign_certificate> certificates;
  bool strictly_pd = false;

  const sign_certificate* first_failure() const {
    for (const auto& c : certificates)
      if (!c.proven()) return &c;
    return nullptr;
  }
};

inline int derivative_order_for_dim(int d) {
  if (d < 1) throw std::domain_error("dimension must be >= 1");
  return d / 2 + 2;
}

/// Floating-point minimum of F_j(alpha, u) over n uniform samples of
/// [0, u_max]. A negative minimum is a counterexample *candidate* only; it
/// never certifies anything.
struct prescreen_result {
  double min_value = 0.0;
  double argmin = 0.0;
};

inline prescreen_result grid_prescreen(const bivar_poly& fj, const Rat& alpha, double u_max,
                                       int n) {
  if (n < 2) throw std::domain_error("grid_prescreen: need at least 2 samples");
  if (!(u_max > 0)) throw std::domain_error("grid_prescreen: u_max must be positive");
  const double a = to_double(alpha);
  prescreen_result best;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const double u = u_max * static_cast<double>(i) / static_cast<double>(n - 1);
    double value = 0.0;
    for (const auto& [e, c] : fj.terms())
      value += to_double(c) * std::pow(a, e.first) * std::pow(u, e.second);
    if (first || value < best.min_value) {
      best.min_value = value;
      best.argmin = u;
      first = false;
    }
  }
  return best;
}

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline constexpr double prescreen_default_umax = 50.0;

}  // namespace detail

/// Certifies F_j(alpha, .) >= 0 on the nonnegative ray. A cheap floating
/// prescreen hunts for counterexample candidates first (confirmed exactly
/// before use); certification itself is always the exact Sturm route.
inline sign_certificate certify_order(const bivar_poly& fj, int j, const Rat& alpha) {
  const auto t0 = std::chrono::steady_clock::now();
  sign_certificate cert;
  cert.order = j;
  cert.alpha = alpha;

  const std::vector<Rat> restricted = fj.restrict_a(alpha);

  const prescreen_result pre = grid_prescreen(fj, alpha, detail::prescreen_default_umax, 512);
  if (pre.min_value < 0) {
    const Rat u(pre.argmin);  // exact binary value of the sample point
    Rat exact = detail::rat_poly_eval(restricted, u);
    if (exact < 0) {
      cert.verdict = cert_verdict::counterexample;
      cert.method = cert_method::grid_prescreen;
      cert.u_star = u;
      cert.value = exact;
      cert.wall_ms = detail::elapsed_ms(t0);
      return cert;
    }
  }

  const ray_verdict rv = sturm_nonneg_on_ray(restricted);
  cert.method = cert_method::sturm_exact;
  cert.trivially_zero = rv.trivially_zero;
  cert.isolated_roots = rv.isolated_roots;
  if (rv.nonnegative) {
    cert.verdict = cert_verdict::proven_nonnegative;
  } else {
    cert.verdict = cert_verdict::counterexample;
    cert.u_star = rv.witness;
    cert.value = rv.witness_value;
  }
  cert.wall_ms = detail::elapsed_ms(t0);
  return cert;
}

/// Runs the full sign-condition check for dimension d at exact alpha:
/// certificates for F_1..F_l, l = floor(d/2)+2. strictly_pd reports whether
/// every order was proven nonnegative — the criterion under which the kernel
/// is classified as strictly positive definite on R^d.
inline dimension_report check_dimension(const Rat& alpha, int d,
                                        const std::vector<bivar_poly>* fseq = nullptr) {
  if (d < 1) throw std::domain_error("check_dimension: dimension must be >= 1");
  if (alpha <= 0) throw std::domain_error("check_dimension: alpha must be positive");
  const int l = derivative_order_for_dim(d);

  std::vector<bivar_poly> local;
  if (fseq == nullptr || static_cast<int>(fseq->size()) < l) {
    local = f_sequence(l);
    fseq = &local;
  }

  dimension_report report;
  report.dim = d;
  report.derivative_order = l;
  report.alpha = alpha;
  report.certificates.reserve(static_cast<std::size_t>(l));
  for (int j = 1; j <= l; ++j)
    report.certificates.push_back(certify_order((*fseq)[static_cast<std::size_t>(j - 1)], j, alpha));
  report.strictly_pd = true;
  for (const auto& c : report.certificates) report.strictly_pd = report.strictly_pd && c.proven();
  return report;
}

/// Bracket around the minimal alpha whose full certificate set passes in
/// dimension d: lo is refuted (carries a counterexample), hi is certified.
struct alpha_interval {
  int dim = 0;
  Rat lo;
  Rat hi;
  dimension_report lo_report;
  dimension_report hi_report;

  Rat width() const { return hi - lo; }
};

/// Bisection for the minimal admissible alpha. Probes are dyadic rationals:
/// the first certified probe is found by doubling from 1 (refusal below the
/// cap aborts with a diagnostic), the first refuted one by halving, and the
/// bracket is then narrowed to width <= tol.
inline alpha_interval find_alpha_min(int d, const Rat& tol, const Rat& cap = Rat(1 << 20)) {
  if (d < 1) throw std::domain_error("find_alpha_min: dimension must be >= 1");
  if (tol <= 0) throw std::domain_error("find_alpha_min: tol must be positive");
  const int l = derivative_order_for_dim(d);
  const std::vector<bivar_poly> fseq = f_sequence(l);

  alpha_interval out;
  out.dim = d;

  dimension_report probe = check_dimension(Rat(1), d, &fseq);
  if (probe.strictly_pd) {
    out.hi = Rat(1);
    out.hi_report = probe;
    Rat a(1, 2);
    while (true) {
      dimension_report r = check_dimension(a, d, &fseq);
      if (!r.strictly_pd) {
        out.lo = a;
        out.lo_report = r;
        break;
      }
      out.hi = a;
      out.hi_report = r;
      a /= 2;
      if (boost::multiprecision::denominator(a) > (Int(1) << 80))
        throw std::runtime_error("find_alpha_min: no refuted alpha found above 2^-80");
    }
  } else {
    out.lo = Rat(1);
    out.lo_report = probe;
    Rat a(2);
    while (true) {
      if (a > cap)
        throw std::runtime_error("find_alpha_min: no certified alpha found below cap " +
                                 rational_to_string(cap));
      dimension_report r = check_dimension(a, d, &fseq);
      if (r.strictly_pd) {
        out.hi = a;
        out.hi_report = r;
        break;
      }
      out.lo = a;
      out.lo_report = r;
      a *= 2;
    }
  }

  while (out.width() > tol) {
    const Rat mid = (out.lo + out.hi) / 2;
    dimension_report r = check_dimension(mid, d, &fseq);
    if (r.strictly_pd) {
      out.hi = mid;
      out.hi_report = r;
    } else {
      out.lo = mid;
      out.lo_report = r;
    }
  }
  return out;
}

}  // namespace cinfrbf
