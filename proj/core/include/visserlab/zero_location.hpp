#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "visserlab/polynomial.hpp"

namespace visserlab {

/// The root finder could not converge. Never silent: callers either handle
/// it (norm_zero falls back to quadrature) or let it propagate.
class root_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem hypothesis (zero-free disk certificate) is unmet. Distinct from
/// a violated verdict: the statement was never applicable.
class hypothesis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All roots with multiplicity plus a backward-error style relative accuracy
/// estimate (double roots lose roughly half the digits).
struct RootSet {
  std::vector<Complex> roots;
  double accuracy = 0.0;
};

/// Aberth-Ehrlich simultaneous iteration with a Newton polish step. Roots are
/// returned sorted by (modulus, re, im). Throws root_failure on
/// non-convergence.
RootSet roots(const Polynomial& p);

/// Evidence for "no zeros in |z| < rho". Zeros exactly on |z| = rho are
/// feasible (the hypothesis is the open disk); validity allows the computed
/// minimum modulus to dip below rho by the root accuracy, floored at 1e-12
/// relative.
struct ZeroFreeCertificate {
  double rho = 1.0;
  double min_root_modulus = 0.0;
  double margin = 0.0;  // min_root_modulus - rho
  double root_accuracy = 0.0;

  bool valid() const noexcept {
    double guard = rho * (root_accuracy > 1e-12 ? root_accuracy : 1e-12);
    return margin >= -guard;
  }
};

ZeroFreeCertificate certify_zero_free(const Polynomial& p, double rho);

/// Instance generator: root moduli uniform in [rho*(1+1e-6), R], angles
/// uniform, leading coefficient modulus in [leading_min, leading_max] with
/// uniform phase. Deterministic for a fixed seed; resamples while the root
/// accuracy exceeds 1e-7 so theorem tolerances stay meaningful.
struct GeneratorSpec {
  int n = 2;
  double rho = 1.0;
  double R = 3.0;
  std::uint64_t seed = 0;
  double leading_min = 0.5;
  double leading_max = 2.0;
};

struct GeneratedPoly {
  Polynomial poly;
  RootForm form;
};

GeneratedPoly generate_zero_free(const GeneratorSpec& spec);

/// Viete bound for polynomials certified zero-free in |z| < rho:
/// rho^j |a_j| <= C(n,j) |a_0| for j = 1..n. slack_j = C(n,j)|a_0| -
/// rho^j|a_j|; ok requires every slack above a rounding-level tolerance.
struct DominanceReport {
  bool ok = false;
  int worst_index = 0;
  double worst_slack = 0.0;
};

DominanceReport coefficient_dominance_check(const Polynomial& p, double rho);

}  // namespace visserlab
