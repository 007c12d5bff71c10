#include "visserlab/zero_location.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace visserlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Horner value and derivative in one pass.
void eval_with_derivative(const std::vector<Complex>& a, Complex z, Complex& pv,
                          Complex& dv) {
  pv = a.back();
  dv = Complex{0.0, 0.0};
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    dv = dv * z + pv;
    pv = pv * z + a[i];
  }
}

double coeff_magnitude_sum(const std::vector<Complex>& a, double r) {
  double s = 0.0, rp = 1.0;
  for (const Complex& c : a) {
    s += std::abs(c) * rp;
    rp *= r;
  }
  return s;
}

void sort_roots(std::vector<Complex>& r) {
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Uniform double in [0, 1) from the top 53 bits; identical across platforms
// for a given engine stream.
double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RootSet roots(const Polynomial& p) {
  if (p.degree() < 1) {
    throw std::invalid_argument("roots: degree must be >= 1");
  }
  if (p.leading_is_zero()) {
    throw std::invalid_argument("roots: zero leading coefficient");
  }

  // Deflate exact zeros at the origin, then work on the monic polynomial.
  const auto& raw = p.coeffs();
  std::size_t zeros_at_origin = 0;
  while (zeros_at_origin < raw.size() - 1 &&
         raw[zeros_at_origin] == Complex{0.0, 0.0}) {
    ++zeros_at_origin;
  }
  std::vector<Complex> a(raw.begin() + static_cast<std::ptrdiff_t>(zeros_at_origin),
                         raw.end());
  const Complex lead = a.back();
  for (Complex& c : a) c /= lead;
  const int n = static_cast<int>(a.size()) - 1;

  RootSet out;
  out.roots.assign(zeros_at_origin, Complex{0.0, 0.0});
  if (n == 0) {
    out.accuracy = 0.0;
    sort_roots(out.roots);
    return out;
  }

  // Start on a circle at the geometric mean of the root moduli, radii and
  // angles staggered to break symmetric stalls.
  double r0 = std::pow(std::abs(a.front()), 1.0 / n);
  if (!(r0 > 1e-6)) r0 = 1e-6;
  if (!(r0 < 1e6)) r0 = 1e6;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double frac = std::fmod(0.618033988749895 * j, 1.0);
    double radius = r0 * (0.85 + 0.3 * frac);
    double angle = 2.0 * M_PI * j / n + 0.7391;
    z[static_cast<std::size_t>(j)] = std::polar(radius, angle);
  }

  const int max_iters = 400;
  double max_step = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iters && max_step > 1e-13; ++iter) {
    max_step = 0.0;
    for (int j = 0; j < n; ++j) {
      Complex pv, dv;
      eval_with_derivative(a, z[j], pv, dv);
      if (pv == Complex{0.0, 0.0}) continue;
      Complex newton = (dv == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : pv / dv;
      Complex repulsion{0.0, 0.0};
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        Complex d = z[j] - z[i];
        if (d == Complex{0.0, 0.0}) d = Complex{1e-12 * (1.0 + std::abs(z[j])), 0.0};
        repulsion += 1.0 / d;
      }
      Complex denom = 1.0 - newton * repulsion;
      Complex step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      double cap = 1.0 + std::abs(z[j]);
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      z[j] -= step;
      if (!std::isfinite(z[j].real()) || !std::isfinite(z[j].imag())) {
        throw root_failure("roots: iteration diverged to non-finite value");
      }
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[j])));
    }
  }

  // Newton polish.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < 2; ++k) {
      Complex pv, dv;
      eval_with_derivative(a, z[j], pv, dv);
      if (pv == Complex{0.0, 0.0} || std::abs(dv) < 1e-300) break;
      Complex step = pv / dv;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(z[j]))) break;
      z[j] -= step;
    }
  }

  // Backward-error style accuracy: residual plus evaluation noise over the
  // local derivative, relative to max(1, |root|).
  double accuracy = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex pv, dv;
    eval_with_derivative(a, z[j], pv, dv);
    double noise = kEps * coeff_magnitude_sum(a, std::abs(z[j]));
    double deriv = std::max(std::abs(dv), 1e-300);
    double err = (std::abs(pv) + noise) / deriv;
    accuracy = std::max(accuracy, err / std::max(1.0, std::abs(z[j])));
  }
  if (!std::isfinite(accuracy) || accuracy > 1e-3) {
    throw root_failure("roots: accuracy estimate " + std::to_string(accuracy) +
                       " after iteration cap");
  }

  out.roots.insert(out.roots.end(), z.begin(), z.end());
  out.accuracy = accuracy;
  sort_roots(out.roots);
  return out;
}

ZeroFreeCertificate certify_zero_free(const Polynomial& p, double rho) {
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("certify_zero_free: rho must be >= 1");
  }
  ZeroFreeCertificate cert;
  cert.rho = rho;
  if (p.degree() == 0) {
    cert.min_root_modulus = std::numeric_limits<double>::infinity();
    cert.margin = std::numeric_limits<double>::infinity();
    cert.root_accuracy = 0.0;
    return cert;
  }
  RootSet rs = roots(p);
  double min_mod = std::numeric_limits<double>::infinity();
  for (Complex r : rs.roots) min_mod = std::min(min_mod, std::abs(r));
  cert.min_root_modulus = min_mod;
  cert.margin = min_mod - rho;
  cert.root_accuracy = rs.accuracy;
  return cert;
}

GeneratedPoly generate_zero_free(const GeneratorSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("generate_zero_free: n must be >= 1");
  }
  if (!(spec.rho >= 1.0)) {
    throw std::invalid_argument("generate_zero_free: rho must be >= 1");
  }
  const double inner = spec.rho * (1.0 + 1e-6);
  if (!(spec.R >= spec.rho * (1.0 + 1e-6))) {
    throw std::invalid_argument("generate_zero_free: R must be >= rho*(1+1e-6)");
  }
  if (!(spec.leading_min > 0.0) || !(spec.leading_max >= spec.leading_min)) {
    throw std::invalid_argument("generate_zero_free: bad leading_scale range");
  }

  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RootForm form;
    form.roots.resize(static_cast<std::size_t>(spec.n));
    for (auto& r : form.roots) {
      double modulus = inner + (spec.R - inner) * u01(rng);
      double angle = 2.0 * M_PI * u01(rng);
      r = std::polar(modulus, angle);
    }
    double lead_mod = spec.leading_min + (spec.leading_max - spec.leading_min) * u01(rng);
    form.leading = std::polar(lead_mod, 2.0 * M_PI * u01(rng));

    Polynomial poly = from_roots(form);
    ZeroFreeCertificate cert;
    try {
      cert = certify_zero_free(poly, spec.rho);
    } catch (const root_failure&) {
      continue;
    }
    if (cert.valid() && cert.root_accuracy <= 1e-7) {
      return GeneratedPoly{std::move(poly), std::move(form)};
    }
  }
  throw std::runtime_error("generate_zero_free: resample budget exhausted");
}

DominanceReport coefficient_dominance_check(const Polynomial& p, double rho) {
  if (p.degree() < 1) {
    throw std::invalid_argument("coefficient_dominance_check: degree must be >= 1");
  }
  ZeroFreeCertificate cert = certify_zero_free(p, rho);
  if (!cert.valid()) {
    throw hypothesis_error("coefficient_dominance_check: polynomial is not zero-free in |z| < " +
                           std::to_string(rho));
  }
  const int n = p.degree();
  const double a0 = std::abs(p.constant());
  DominanceReport report;
  report.ok = true;
  report.worst_slack = std::numeric_limits<double>::infinity();
  report.worst_index = 1;
  double rp = 1.0;
  for (int j = 1; j <= n; ++j) {
    rp *= rho;
    double lhs = rp * std::abs(p.coeff(j));
    double rhs = static_cast<double>(binomial(n, j)) * a0;
    double slack = rhs - lhs;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_index = j;
    }
    if (slack < -(1e-12 * (lhs + rhs) + 1e-300)) {
      report.ok = false;
    }
  }
  return report;
}

}  // namespace visserlab
