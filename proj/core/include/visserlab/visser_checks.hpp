#pragma once

#include <optional>
#include <string>

#include "visserlab/circle_norms.hpp"
#include "visserlab/polynomial.hpp"
#include "visserlab/zero_location.hpp"

namespace visserlab {

enum class Statement {
  visser,
  thm1,
  thm2,
  thm3,
  cor1,
  cor2,
  lemma_pointwise,
  lemma_phase,
  lemma_twoterm,
  operator_bound,
  composition_double,
};

enum class Verdict { holds, holds_at_equality, violated, inconclusive };

std::string to_string(Statement s);
std::string to_string(Verdict v);
Statement statement_from_string(const std::string& name);

struct CheckParams {
  int n = 0;
  std::optional<int> s;  // s or k, depending on the statement
  std::optional<ExponentP> p;
  std::optional<double> rho;
  std::optional<double> phi;
};

/// One inequality instance. tol_used = tau_rel * scale + the linear sum of
/// err_abs from every norm entering either side. Verdicts:
///   holds_at_equality  iff |lhs - rhs| <= tol_used
///   violated           iff lhs > rhs + tol_used and no entering norm was
///                      flagged (a flagged norm in that position gives
///                      inconclusive instead)
///   holds              otherwise.
struct InequalityReport {
  Statement statement = Statement::visser;
  CheckParams params;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;  // lhs/rhs, present when rhs > 0
  double tol_used = 0.0;
  Verdict verdict = Verdict::holds;
};

struct CheckConfig {
  QuadratureConfig quad{};
  double tau_rel = 1e-9;
  std::size_t pointwise_grid = 4096;
};

/// The sharpening constant: 1 for s = 0, 1/||1+z||_p for s > 0.
double c_p(int s, const ExponentP& p, const QuadratureConfig& cfg = {});

/// |a_n| + |a_0| <= ||P||_inf; equality exactly for lacunary a_n z^n + a_0.
InequalityReport check_visser(const Polynomial& p, const CheckConfig& cfg = {});

/// ||a_n z + a_s/C(n,s)||_p <= ||P||_p for any P, 0 <= s <= n-1, p finite or 0.
InequalityReport check_theorem1(const Polynomial& p, int s, const ExponentP& exponent,
                                const CheckConfig& cfg = {});

/// Zero-free in |z| < 1 sharpening: rhs scaled by c_p.
InequalityReport check_theorem2(const Polynomial& p, int s, const ExponentP& exponent,
                                const CheckConfig& cfg = {});

/// Zero-free in |z| < rho, rho >= 1:
/// ||a_n z + a_s/C(n,s)||_p <= c_p * (||1+z||_p / ||rho^s+z||_p) * ||P||_p.
/// Equality for the lacunary family a_n z^n + a_0 at s = 0.
InequalityReport check_theorem3(const Polynomial& p, int s, const ExponentP& exponent,
                                double rho, const CheckConfig& cfg = {});
InequalityReport check_theorem3(const Polynomial& p, int s, const ExponentP& exponent,
                                double rho, const ZeroFreeCertificate& cert,
                                const CheckConfig& cfg = {});

/// p -> inf form: |a_n| + |a_s|/C(n,s) <= ||P||_inf / (1 + rho^s), s >= 1.
InequalityReport check_corollary1(const Polynomial& p, int s, double rho,
                                  const CheckConfig& cfg = {});

/// |a_n| + |a_s|/C(n,s) <= 2 c_p ||P||_p / ||rho^s+z||_p. At p = 0 the report
/// is evaluated through the Mahler norms with a p = 0.05 guard run.
InequalityReport check_corollary2(const Polynomial& p, int s, const ExponentP& exponent,
                                  double rho, const CheckConfig& cfg = {});

/// Pointwise bound on |z| = 1 for zero-free P:
/// rho^s |a_n z^n + (a_s/C)z^s| <= |(a_{n-s}/C)z^{n-s} + a_0|.
/// lhs = max grid gap (left - right), rhs = 0.
InequalityReport check_lemma_pointwise(const Polynomial& p, int s, double rho,
                                       std::size_t grid_size = 4096,
                                       const CheckConfig& cfg = {});

/// Phase-integral bound for zero-free (rho = 1) P, 0 <= k <= n-1, p > 0:
/// mean |G e^{i phi} + Q|^p <= Lambda^p mean |P|^p with
/// G = a_n e^{int} + (a_k/C)e^{ikt}, Q = (a_{n-k}/C)e^{i(n-k)t} + a_0 and
/// Lambda = |1+e^{i phi}| for k = 0, 1 otherwise.
InequalityReport check_lemma_phase_integral(const Polynomial& p, int k, double exponent,
                                            double phi, const CheckConfig& cfg = {});

/// ||alpha z + beta||_p >= ((|alpha|+|beta|)/2) ||1+z||_p, p > 0.
/// Reported with lhs = lower bound, rhs = two-term norm.
InequalityReport check_lemma_twoterm_lower(Complex alpha, Complex beta, double exponent,
                                           const CheckConfig& cfg = {});

/// ||C_gamma P||_p <= max(|gamma_0|, |gamma_n|) ||P||_p for the two
/// constructively admissible families (theorem1_selector on arbitrary P;
/// phase_operator on P certified zero-free at rho = 1). Other gamma are
/// rejected: admissibility is not decided in general.
InequalityReport check_operator_norm_bound(const GammaVector& gamma, const Polynomial& p,
                                           const ExponentP& exponent,
                                           const CheckConfig& cfg = {});

/// Double-mean comparison for Lambda = z^n + z^s against zero-free (rho = 1)
/// P, p > 0 finite: tensor-product trapezoid on 1024x1024 nodes with one
/// doubling check.
InequalityReport check_composition_double_integral(int s, const Polynomial& p,
                                                   double exponent,
                                                   const CheckConfig& cfg = {});

/// gamma_n = 1, gamma_s = 1/C(n,s), all other entries zero.
GammaVector theorem1_selector(int n, int s);

/// The admissible operator behind the phase-integral bound: entries at
/// {0, k, n-k, n} built from e^{i phi}.
GammaVector phase_operator(int n, int k, double phi);

}  // namespace visserlab
