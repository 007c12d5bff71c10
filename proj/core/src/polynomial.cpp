#include "visserlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace visserlab {

namespace {

bool all_zero(const std::vector<Complex>& c) {
  return std::all_of(c.begin(), c.end(),
                     [](Complex v) { return v == Complex{0.0, 0.0}; });
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs)
    : Polynomial(std::move(coeffs), false) {}

Polynomial::Polynomial(std::vector<Complex> coeffs, bool allow_zero_leading)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("polynomial: coefficient list is empty");
  }
  for (Complex c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("polynomial: non-finite coefficient");
    }
  }
  if (all_zero(coeffs_)) {
    throw std::invalid_argument("polynomial: identically zero");
  }
  if (!allow_zero_leading && coeffs_.back() == Complex{0.0, 0.0}) {
    throw std::invalid_argument("polynomial: zero leading coefficient");
  }
}

Polynomial Polynomial::formal(std::vector<Complex> coeffs) {
  return Polynomial(std::move(coeffs), true);
}

Complex Polynomial::coeff(int j) const {
  if (j < 0 || j > degree()) {
    throw std::out_of_range("polynomial: coefficient index " + std::to_string(j));
  }
  return coeffs_[static_cast<std::size_t>(j)];
}

Complex eval(const Polynomial& p, Complex z) {
  const auto& a = p.coeffs();
  Complex acc = a.back();
  for (auto it = a.rbegin() + 1; it != a.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Polynomial reverse_conjugate(const Polynomial& p) {
  const auto& a = p.coeffs();
  std::vector<Complex> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    out[j] = std::conj(a[a.size() - 1 - j]);
  }
  return Polynomial::formal(std::move(out));
}

Polynomial dilate(const Polynomial& p, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("dilate: rho must be positive and finite");
  }
  const auto& a = p.coeffs();
  std::vector<Complex> out(a.size());
  double factor = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    out[j] = a[j] * factor;
    if (!std::isfinite(out[j].real()) || !std::isfinite(out[j].imag())) {
      throw std::domain_error("dilate: rho^j overflows the floating range");
    }
    factor *= rho;
    if (!std::isfinite(factor) && j + 1 < a.size()) {
      throw std::domain_error("dilate: rho^j overflows the floating range");
    }
  }
  return Polynomial::formal(std::move(out));
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("binomial: need 0 <= k <= n");
  }
  if (n > 64) {
    throw std::domain_error("binomial: n > 64 exceeds the exactness cap");
  }
  const int kk = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= kk; ++i) {
    r = r * static_cast<unsigned>(n - kk + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(r);
}

Polynomial coefficient_operator(const GammaVector& gamma, const Polynomial& p) {
  const auto& a = p.coeffs();
  if (gamma.size() != a.size()) {
    throw std::invalid_argument("coefficient_operator: gamma length " +
                                std::to_string(gamma.size()) + " != degree+1 = " +
                                std::to_string(a.size()));
  }
  std::vector<Complex> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    out[j] = gamma[j] * a[j];
  }
  return Polynomial::formal(std::move(out));
}

Polynomial from_roots(const RootForm& form) {
  if (form.leading == Complex{0.0, 0.0}) {
    throw std::invalid_argument("from_roots: zero leading factor");
  }
  std::vector<Complex> roots = form.roots;
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<Complex> c{form.leading};
  c.reserve(roots.size() + 1);
  for (Complex r : roots) {
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k > 0; --k) {
      c[k] = c[k - 1] - r * c[k];
    }
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

}  // namespace visserlab
