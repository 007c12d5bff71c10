#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace visserlab {

using Complex = std::complex<double>;

/// Dense complex polynomial a_0 + a_1 z + ... + a_n z^n, coefficients in
/// ascending order. Degree is structural (coeffs().size() - 1). The normal
/// constructor rejects a zero leading coefficient; formal() tolerates it for
/// operations that can produce one (reversal of a polynomial with a_0 = 0,
/// coefficient operators with gamma_n = 0) and records the formal degree.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial formal(std::vector<Complex> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  Complex coeff(int j) const;
  Complex leading() const { return coeffs_.back(); }
  Complex constant() const { return coeffs_.front(); }
  bool leading_is_zero() const noexcept { return coeffs_.back() == Complex{0.0, 0.0}; }

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

 private:
  Polynomial(std::vector<Complex> coeffs, bool allow_zero_leading);
  std::vector<Complex> coeffs_;
};

/// Horner evaluation of P at z.
Complex eval(const Polynomial& p, Complex z);

/// P*(z) = z^n conj(P(1/conj(z))): coefficient j becomes conj(a_{n-j}).
/// |P*(z)| = |P(z)| on |z| = 1; involution when a_0 != 0. The result carries
/// a zero leading coefficient (formal degree n) exactly when a_0 = 0.
Polynomial reverse_conjugate(const Polynomial& p);

/// P(rho z): coefficient j scaled by rho^j; roots divided by rho.
/// Throws std::domain_error when the scaling leaves the floating range.
Polynomial dilate(const Polynomial& p, double rho);

/// Exact C(n, k) for 0 <= k <= n <= 64 (the shared exactness cap).
std::uint64_t binomial(int n, int k);

/// Coefficient multipliers gamma_0..gamma_n for the Schur-Szego style
/// operator sum_j gamma_j a_j z^j.
using GammaVector = std::vector<Complex>;

/// C_gamma P: coefficient-wise product. gamma length must be degree(P)+1.
Polynomial coefficient_operator(const GammaVector& gamma, const Polynomial& p);

/// leading * prod_j (z - roots[j]).
struct RootForm {
  Complex leading;
  std::vector<Complex> roots;
};

/// Monomial expansion, multiplying factors in order of increasing root
/// modulus to limit cancellation for mixed-scale roots.
Polynomial from_roots(const RootForm& form);

}  // namespace visserlab
