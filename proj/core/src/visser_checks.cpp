#include "visserlab/visser_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace visserlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Value with a linearly-propagated absolute error: relative errors add
// through products and quotients, absolute errors add through sums.
struct EV {
  double v = 0.0;
  double err = 0.0;
  bool flagged = false;
};

EV from_norm(const NormResult& r) { return EV{r.value, r.err_abs, r.flagged}; }
EV exact(double v) { return EV{v, 0.0, false}; }

EV ev_mul(const EV& a, const EV& b) {
  return EV{a.v * b.v, std::abs(a.v) * b.err + std::abs(b.v) * a.err,
            a.flagged || b.flagged};
}

EV ev_div(const EV& a, const EV& b) {
  double denom = std::max(std::abs(b.v), kTiny);
  double v = a.v / denom * (b.v < 0 ? -1.0 : 1.0);
  return EV{v, a.err / denom + std::abs(v) * b.err / denom, a.flagged || b.flagged};
}

EV ev_scale(const EV& a, double k) {
  return EV{a.v * k, a.err * std::abs(k), a.flagged};
}

InequalityReport make_report(Statement st, CheckParams params, const EV& lhs,
                             const EV& rhs, double tau_rel, double scale = 0.0) {
  InequalityReport rep;
  rep.statement = st;
  rep.params = std::move(params);
  rep.lhs = lhs.v;
  rep.rhs = rhs.v;
  rep.tol_used = tau_rel * std::max({std::abs(lhs.v), std::abs(rhs.v), scale}) +
                 lhs.err + rhs.err;
  if (rhs.v > 0.0) rep.ratio = lhs.v / rhs.v;
  const bool flagged = lhs.flagged || rhs.flagged;
  if (std::abs(lhs.v - rhs.v) <= rep.tol_used) {
    rep.verdict = Verdict::holds_at_equality;
  } else if (lhs.v <= rhs.v + rep.tol_used) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = flagged ? Verdict::inconclusive : Verdict::violated;
  }
  return rep;
}

void require_theorem_poly(const Polynomial& p) {
  if (p.degree() < 1) {
    throw std::invalid_argument("theorem checks require degree n >= 1");
  }
  if (p.leading_is_zero()) {
    throw std::invalid_argument("theorem checks require a nonzero leading coefficient");
  }
}

void require_finite_or_zero(const ExponentP& p, const char* what) {
  if (p.is_infinity()) {
    throw std::invalid_argument(std::string(what) + ": p must be finite or 0");
  }
}

void require_s_range(int s, int n) {
  if (s < 0 || s > n - 1) {
    throw std::invalid_argument("s must satisfy 0 <= s <= n-1");
  }
}

ZeroFreeCertificate require_zero_free(const Polynomial& p, double rho) {
  ZeroFreeCertificate cert = certify_zero_free(p, rho);
  if (!cert.valid()) {
    throw hypothesis_error("hypothesis unmet: polynomial vanishes in |z| < " +
                           std::to_string(rho) + " (margin " +
                           std::to_string(cert.margin) + ")");
  }
  return cert;
}

EV c_p_ev(int s, const ExponentP& p, const QuadratureConfig& cfg) {
  if (s < 0) throw std::invalid_argument("c_p: s must be >= 0");
  if (s == 0) return exact(1.0);
  return ev_div(exact(1.0), from_norm(two_term_norm(1.0, 1.0, p, cfg)));
}

// ||a_n z + a_s/C(n,s)||_p, the left side shared by the three theorems.
EV two_term_lhs(const Polynomial& p, int s, const ExponentP& exponent,
                const QuadratureConfig& cfg) {
  const int n = p.degree();
  Complex reduced = p.coeff(s) / static_cast<double>(binomial(n, s));
  return from_norm(two_term_norm(p.leading(), reduced, exponent, cfg));
}

EV cor_lhs(const Polynomial& p, int s) {
  const int n = p.degree();
  double v = std::abs(p.leading()) +
             std::abs(p.coeff(s)) / static_cast<double>(binomial(n, s));
  return EV{v, 4.0 * kEps * v, false};
}

InequalityReport corollary2_eval(const Polynomial& p, int s, const ExponentP& exponent,
                                 double rho, const CheckConfig& cfg) {
  EV lhs = cor_lhs(p, s);
  EV c = c_p_ev(s, exponent, cfg.quad);
  EV pn = from_norm(norm_p(p, exponent, cfg.quad));
  EV rss = from_norm(two_term_norm(1.0, std::pow(rho, s), exponent, cfg.quad));
  EV rhs = ev_scale(ev_div(ev_mul(c, pn), rss), 2.0);
  CheckParams params;
  params.n = p.degree();
  params.s = s;
  params.p = exponent;
  params.rho = rho;
  return make_report(Statement::cor2, std::move(params), lhs, rhs, cfg.tau_rel);
}

}  // namespace

std::string to_string(Statement s) {
  switch (s) {
    case Statement::visser: return "visser";
    case Statement::thm1: return "thm1";
    case Statement::thm2: return "thm2";
    case Statement::thm3: return "thm3";
    case Statement::cor1: return "cor1";
    case Statement::cor2: return "cor2";
    case Statement::lemma_pointwise: return "lemma_pointwise";
    case Statement::lemma_phase: return "lemma_phase";
    case Statement::lemma_twoterm: return "lemma_twoterm";
    case Statement::operator_bound: return "operator_bound";
    case Statement::composition_double: return "composition_double";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_at_equality: return "holds_at_equality";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Statement statement_from_string(const std::string& name) {
  for (Statement s : {Statement::visser, Statement::thm1, Statement::thm2,
                      Statement::thm3, Statement::cor1, Statement::cor2,
                      Statement::lemma_pointwise, Statement::lemma_phase,
                      Statement::lemma_twoterm, Statement::operator_bound,
                      Statement::composition_double}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown statement '" + name + "'");
}

double c_p(int s, const ExponentP& p, const QuadratureConfig& cfg) {
  return c_p_ev(s, p, cfg).v;
}

InequalityReport check_visser(const Polynomial& p, const CheckConfig& cfg) {
  require_theorem_poly(p);
  double v = std::abs(p.leading()) + std::abs(p.constant());
  EV lhs{v, 4.0 * kEps * v, false};
  EV rhs = from_norm(norm_inf(p));
  CheckParams params;
  params.n = p.degree();
  params.p = ExponentP::infinity();
  return make_report(Statement::visser, std::move(params), lhs, rhs, cfg.tau_rel);
}

InequalityReport check_theorem1(const Polynomial& p, int s, const ExponentP& exponent,
                                const CheckConfig& cfg) {
  require_theorem_poly(p);
  require_s_range(s, p.degree());
  require_finite_or_zero(exponent, "check_theorem1");
  EV lhs = two_term_lhs(p, s, exponent, cfg.quad);
  EV rhs = from_norm(norm_p(p, exponent, cfg.quad));
  CheckParams params;
  params.n = p.degree();
  params.s = s;
  params.p = exponent;
  return make_report(Statement::thm1, std::move(params), lhs, rhs, cfg.tau_rel);
}

InequalityReport check_theorem2(const Polynomial& p, int s, const ExponentP& exponent,
                                const CheckConfig& cfg) {
  require_theorem_poly(p);
  require_s_range(s, p.degree());
  require_finite_or_zero(exponent, "check_theorem2");
  require_zero_free(p, 1.0);
  EV lhs = two_term_lhs(p, s, exponent, cfg.quad);
  EV rhs = ev_mul(c_p_ev(s, exponent, cfg.quad),
                  from_norm(norm_p(p, exponent, cfg.quad)));
  CheckParams params;
  params.n = p.degree();
  params.s = s;
  params.p = exponent;
  params.rho = 1.0;
  return make_report(Statement::thm2, std::move(params), lhs, rhs, cfg.tau_rel);
}

InequalityReport check_theorem3(const Polynomial& p, int s, const ExponentP& exponent,
                                double rho, const CheckConfig& cfg) {
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("check_theorem3: rho must be >= 1");
  }
  require_theorem_poly(p);
  ZeroFreeCertificate cert = require_zero_free(p, rho);
  return check_theorem3(p, s, exponent, rho, cert, cfg);
}

InequalityReport check_theorem3(const Polynomial& p, int s, const ExponentP& exponent,
                                double rho, const ZeroFreeCertificate& cert,
                                const CheckConfig& cfg) {
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("check_theorem3: rho must be >= 1");
  }
  require_theorem_poly(p);
  require_s_range(s, p.degree());
  require_finite_or_zero(exponent, "check_theorem3");
  if (!cert.valid()) {
    throw hypothesis_error("check_theorem3: certificate invalid (margin " +
                           std::to_string(cert.margin) + ")");
  }

  EV lhs = two_term_lhs(p, s, exponent, cfg.quad);
  EV pn = from_norm(norm_p(p, exponent, cfg.quad));
  EV one = from_norm(two_term_norm(1.0, 1.0, exponent, cfg.quad));
  EV rss = from_norm(two_term_norm(1.0, std::pow(rho, s), exponent, cfg.quad));
  EV rhs = ev_mul(ev_mul(c_p_ev(s, exponent, cfg.quad), ev_div(one, rss)), pn);

  // The c_p * ||1+z||_p product cancels algebraically; both routes must agree.
  EV reduced = (s > 0) ? ev_div(pn, rss) : pn;
  double gap = std::abs(rhs.v - reduced.v);
  double allowance = rhs.err + reduced.err + 1e-12 * std::max(rhs.v, reduced.v);
  if (gap > allowance) {
    throw std::logic_error("check_theorem3: rhs routes disagree by " +
                           std::to_string(gap));
  }

  CheckParams params;
  params.n = p.degree();
  params.s = s;
  params.p = exponent;
  params.rho = rho;
  return make_report(Statement::thm3, std::move(params), lhs, rhs, cfg.tau_rel);
}

InequalityReport check_corollary1(const Polynomial& p, int s, double rho,
                                  const CheckConfig& cfg) {
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("check_corollary1: rho must be >= 1");
  }
  require_theorem_poly(p);
  if (s < 1 || s > p.degree() - 1) {
    throw std::invalid_argument("check_corollary1: s must satisfy 1 <= s <= n-1");
  }
  require_zero_free(p, rho);
  EV lhs = cor_lhs(p, s);
  EV rhs = ev_div(from_norm(norm_inf(p)), exact(1.0 + std::pow(rho, s)));
  CheckParams params;
  params.n = p.degree();
  params.s = s;
  params.p = ExponentP::infinity();
  params.rho = rho;
  return make_report(Statement::cor1, std::move(params), lhs, rhs, cfg.tau_rel);
}

InequalityReport check_corollary2(const Polynomial& p, int s, const ExponentP& exponent,
                                  double rho, const CheckConfig& cfg) {
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("check_corollary2: rho must be >= 1");
  }
  require_theorem_poly(p);
  require_s_range(s, p.degree());
  require_finite_or_zero(exponent, "check_corollary2");
  require_zero_free(p, rho);
  InequalityReport rep = corollary2_eval(p, s, exponent, rho, cfg);
  if (exponent.is_zero()) {
    // The p = 0 case rides on the p -> 0+ limit; a small-p guard run must
    // agree. A guard violation means an implementation bug, not a disproof.
    InequalityReport guard =
        corollary2_eval(p, s, ExponentP::finite(0.05), rho, cfg);
    if (guard.verdict == Verdict::violated) {
      throw std::logic_error("check_corollary2: p -> 0+ guard violated at p = 0.05");
    }
  }
  return rep;
}

InequalityReport check_lemma_pointwise(const Polynomial& p, int s, double rho,
                                       std::size_t grid_size, const CheckConfig& cfg) {
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("check_lemma_pointwise: rho must be >= 1");
  }
  if (grid_size < 1024) {
    throw std::invalid_argument("check_lemma_pointwise: grid_size must be >= 1024");
  }
  require_theorem_poly(p);
  require_s_range(s, p.degree());
  require_zero_free(p, rho);

  const int n = p.degree();
  const double inv_binom = 1.0 / static_cast<double>(binomial(n, s));
  const Complex an = p.leading();
  const Complex as = p.coeff(s) * inv_binom;
  const Complex ans = p.coeff(n - s) * inv_binom;
  const Complex a0 = p.constant();
  const double rs = std::pow(rho, s);

  double max_gap = -std::numeric_limits<double>::infinity();
  double grid_scale = 0.0;
  for (std::size_t m = 0; m < grid_size; ++m) {
    double theta = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(grid_size);
    Complex en = std::polar(1.0, n * theta);
    Complex es = std::polar(1.0, s * theta);
    Complex ens = std::polar(1.0, (n - s) * theta);
    double left = rs * std::abs(an * en + as * es);
    double right = std::abs(ans * ens + a0);
    max_gap = std::max(max_gap, left - right);
    grid_scale = std::max(grid_scale, left + right);
  }

  EV lhs{max_gap, 1e-14 * grid_scale, false};
  EV rhs = exact(0.0);
  CheckParams params;
  params.n = n;
  params.s = s;
  params.rho = rho;
  return make_report(Statement::lemma_pointwise, std::move(params), lhs, rhs,
                     cfg.tau_rel, grid_scale);
}

InequalityReport check_lemma_phase_integral(const Polynomial& p, int k, double exponent,
                                            double phi, const CheckConfig& cfg) {
  require_theorem_poly(p);
  require_s_range(k, p.degree());
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("check_lemma_phase_integral: p must be finite and > 0");
  }
  require_zero_free(p, 1.0);

  GammaVector gamma = phase_operator(p.degree(), k, phi);
  Polynomial composed = coefficient_operator(gamma, p);
  PowerMean lm = circle_power_mean(composed, exponent, cfg.quad);
  PowerMean pm = circle_power_mean(p, exponent, cfg.quad);
  double lambda = (k == 0) ? std::abs(1.0 + std::polar(1.0, phi)) : 1.0;
  EV lhs{lm.mean, lm.err_abs, lm.flagged};
  EV rhs = ev_scale(EV{pm.mean, pm.err_abs, pm.flagged}, std::pow(lambda, exponent));

  CheckParams params;
  params.n = p.degree();
  params.s = k;
  params.p = ExponentP::finite(exponent);
  params.rho = 1.0;
  params.phi = phi;
  return make_report(Statement::lemma_phase, std::move(params), lhs, rhs,
                     cfg.tau_rel, pm.mean);
}

InequalityReport check_lemma_twoterm_lower(Complex alpha, Complex beta, double exponent,
                                           const CheckConfig& cfg) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("check_lemma_twoterm_lower: p must be finite and > 0");
  }
  if (alpha == Complex{0.0, 0.0} && beta == Complex{0.0, 0.0}) {
    throw std::invalid_argument("check_lemma_twoterm_lower: alpha and beta both zero");
  }
  ExponentP p = ExponentP::finite(exponent);
  EV lhs = ev_mul(exact(0.5 * (std::abs(alpha) + std::abs(beta))),
                  from_norm(two_term_norm(1.0, 1.0, p, cfg.quad)));
  EV rhs = from_norm(two_term_norm(alpha, beta, p, cfg.quad));
  CheckParams params;
  params.n = 1;
  params.p = p;
  return make_report(Statement::lemma_twoterm, std::move(params), lhs, rhs,
                     cfg.tau_rel);
}

GammaVector theorem1_selector(int n, int s) {
  if (n < 1) throw std::invalid_argument("theorem1_selector: n must be >= 1");
  require_s_range(s, n);
  GammaVector gamma(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
  gamma[static_cast<std::size_t>(n)] = 1.0;
  gamma[static_cast<std::size_t>(s)] = 1.0 / static_cast<double>(binomial(n, s));
  return gamma;
}

GammaVector phase_operator(int n, int k, double phi) {
  if (n < 1) throw std::invalid_argument("phase_operator: n must be >= 1");
  require_s_range(k, n);
  GammaVector gamma(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
  const Complex w = std::polar(1.0, phi);
  if (k == 0) {
    gamma[0] = 1.0 + w;
    gamma[static_cast<std::size_t>(n)] = 1.0 + w;
    return gamma;
  }
  const double inv_binom = 1.0 / static_cast<double>(binomial(n, k));
  gamma[0] = 1.0;
  gamma[static_cast<std::size_t>(n)] = w;
  gamma[static_cast<std::size_t>(k)] += w * inv_binom;
  gamma[static_cast<std::size_t>(n - k)] += inv_binom;
  return gamma;
}

namespace {

struct FamilyMatch {
  enum class Kind { selector, phase } kind = Kind::selector;
  int index = 0;  // s for selector, k for phase
  double phi = 0.0;
};

bool gamma_matches(const GammaVector& got, const GammaVector& expected) {
  if (got.size() != expected.size()) return false;
  for (std::size_t j = 0; j < got.size(); ++j) {
    if (std::abs(got[j] - expected[j]) > 1e-12 * (1.0 + std::abs(expected[j]))) {
      return false;
    }
  }
  return true;
}

FamilyMatch classify_admissible(const GammaVector& gamma) {
  if (gamma.size() < 2) {
    throw std::invalid_argument("operator bound: gamma must have length n+1 >= 2");
  }
  const int n = static_cast<int>(gamma.size()) - 1;
  for (int s = 0; s < n; ++s) {
    if (gamma_matches(gamma, theorem1_selector(n, s))) {
      return FamilyMatch{FamilyMatch::Kind::selector, s, 0.0};
    }
  }
  const Complex gn = gamma[static_cast<std::size_t>(n)];
  {
    // k = 0 pattern: gamma_0 = gamma_n = 1 + e^{i phi}.
    Complex w = gn - 1.0;
    if (std::abs(std::abs(w) - 1.0) < 1e-9) {
      double phi = std::arg(w);
      if (gamma_matches(gamma, phase_operator(n, 0, phi))) {
        return FamilyMatch{FamilyMatch::Kind::phase, 0, phi};
      }
    }
  }
  if (std::abs(std::abs(gn) - 1.0) < 1e-9) {
    double phi = std::arg(gn);
    for (int k = 1; k < n; ++k) {
      if (gamma_matches(gamma, phase_operator(n, k, phi))) {
        return FamilyMatch{FamilyMatch::Kind::phase, k, phi};
      }
    }
  }
  throw std::invalid_argument(
      "operator bound: gamma is outside the two admissible families "
      "(admissibility is not decided in general)");
}

}  // namespace

InequalityReport check_operator_norm_bound(const GammaVector& gamma, const Polynomial& p,
                                           const ExponentP& exponent,
                                           const CheckConfig& cfg) {
  require_theorem_poly(p);
  require_finite_or_zero(exponent, "check_operator_norm_bound");
  if (gamma.size() != p.coeffs().size()) {
    throw std::invalid_argument("check_operator_norm_bound: gamma length mismatch");
  }
  FamilyMatch family = classify_admissible(gamma);
  if (family.kind == FamilyMatch::Kind::phase) {
    require_zero_free(p, 1.0);
  }
  Polynomial composed = coefficient_operator(gamma, p);
  EV lhs = from_norm(norm_p(composed, exponent, cfg.quad));
  double c_gamma = std::max(std::abs(gamma.front()), std::abs(gamma.back()));
  EV rhs = ev_scale(from_norm(norm_p(p, exponent, cfg.quad)), c_gamma);
  CheckParams params;
  params.n = p.degree();
  params.s = family.index;
  params.p = exponent;
  if (family.kind == FamilyMatch::Kind::phase) {
    params.rho = 1.0;
    params.phi = family.phi;
  }
  return make_report(Statement::operator_bound, std::move(params), lhs, rhs,
                     cfg.tau_rel);
}

namespace {

// Tensor-product trapezoid for a double mean of f(theta) * g(t): the grid sum
// factorizes exactly, so each side is the product of the two one-dimensional
// means. One doubling supplies the error estimate.
struct TensorMean {
  double mean = 0.0;
  double err_abs = 0.0;
};

template <typename FRow, typename FCol>
TensorMean tensor_mean(const FRow& row, const FCol& col, std::size_t base_nodes) {
  auto one_level = [](const auto& f, std::size_t nodes, double offset) {
    double sum = 0.0, c = 0.0;
    const double h = 2.0 * M_PI / static_cast<double>(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      double y = f((static_cast<double>(i) + offset) * h) - c;
      double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    return sum;
  };
  double row_base = one_level(row, base_nodes, 0.0);
  double col_base = one_level(col, base_nodes, 0.0);
  double n1 = static_cast<double>(base_nodes);
  double coarse = (row_base / n1) * (col_base / n1);
  double row_fine = row_base + one_level(row, base_nodes, 0.5);
  double col_fine = col_base + one_level(col, base_nodes, 0.5);
  double n2 = 2.0 * n1;
  double fine = (row_fine / n2) * (col_fine / n2);
  return TensorMean{fine, std::abs(fine - coarse) + 8.0 * kEps * std::abs(fine)};
}

}  // namespace

InequalityReport check_composition_double_integral(int s, const Polynomial& p,
                                                   double exponent,
                                                   const CheckConfig& cfg) {
  require_theorem_poly(p);
  require_s_range(s, p.degree());
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("check_composition_double_integral: p must be finite and > 0");
  }
  require_zero_free(p, 1.0);

  const int n = p.degree();
  Polynomial composed = coefficient_operator(theorem1_selector(n, s), p);
  const double gamma0 = (s == 0) ? 1.0 : 0.0;

  auto abs_pow = [exponent](Complex v) {
    double m2 = v.real() * v.real() + v.imag() * v.imag();
    if (m2 < kTiny) return 0.0;
    return std::exp(0.5 * exponent * std::log(m2));
  };
  auto poly_factor = [&](const Polynomial& poly) {
    return [&poly, abs_pow](double t) {
      Complex z{std::cos(t), std::sin(t)};
      const auto& a = poly.coeffs();
      Complex acc = a.back();
      for (auto it = a.rbegin() + 1; it != a.rend(); ++it) acc = acc * z + *it;
      return abs_pow(acc);
    };
  };
  auto lhs_row = [abs_pow](double theta) {
    return abs_pow(1.0 + Complex{std::cos(theta), std::sin(theta)});
  };
  auto rhs_row = [abs_pow, gamma0](double theta) {
    return abs_pow(gamma0 + Complex{std::cos(theta), std::sin(theta)});
  };

  constexpr std::size_t kBaseNodes = 1024;
  TensorMean lhs_m = tensor_mean(lhs_row, poly_factor(composed), kBaseNodes);
  TensorMean rhs_m = tensor_mean(rhs_row, poly_factor(p), kBaseNodes);

  EV lhs{lhs_m.mean, lhs_m.err_abs, false};
  EV rhs{rhs_m.mean, rhs_m.err_abs, false};
  CheckParams params;
  params.n = n;
  params.s = s;
  params.p = ExponentP::finite(exponent);
  params.rho = 1.0;
  return make_report(Statement::composition_double, std::move(params), lhs, rhs,
                     cfg.tau_rel, rhs_m.mean);
}

}  // namespace visserlab
