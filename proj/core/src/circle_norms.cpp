#include "visserlab/circle_norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "visserlab/zero_location.hpp"

namespace visserlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void validate(const QuadratureConfig& cfg) {
  if (!is_power_of_two(cfg.initial_nodes) || !is_power_of_two(cfg.max_nodes) ||
      cfg.initial_nodes > cfg.max_nodes || !(cfg.rel_target > 0.0)) {
    throw std::invalid_argument("quadrature config: nodes must be powers of two, "
                                "initial <= max, rel_target > 0");
  }
}

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// |P(e^{it})|^p as exp((p/2) log(re^2+im^2)), guarded below 1e-300; the p=2
// and p=1 shapes skip the transcendentals.
double abs_pow(Complex v, double p) {
  double m2 = v.real() * v.real() + v.imag() * v.imag();
  if (p == 2.0) return m2;
  if (m2 < kTiny) return 0.0;
  if (p == 1.0) return std::sqrt(m2);
  return std::exp(0.5 * p * std::log(m2));
}

double log_abs(Complex v) {
  double m2 = v.real() * v.real() + v.imag() * v.imag();
  if (m2 < kTiny) m2 = kTiny;
  return 0.5 * std::log(m2);
}

// Sum of f(2*pi*(k+offset)/n) over k = 0..n-1.
template <typename F>
double grid_sum(const F& f, std::size_t n, double offset) {
  Kahan acc;
  const double h = 2.0 * M_PI / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    acc.add(f((static_cast<double>(k) + offset) * h));
  }
  return acc.sum;
}

struct MeanOut {
  double mean = 0.0;
  double err_abs = 0.0;
  bool refined = false;
  bool flagged = false;
  std::size_t nodes = 0;
};

// Uniform trapezoid mean of a periodic integrand with node doubling. Each
// doubling reuses the previous sum: the new nodes are the half-offset grid.
// `absolute_stop` switches the stopping rule from relative change to absolute
// change (used for the log integrand, whose mean can sit near zero).
template <typename F>
MeanOut refine_periodic_mean(const F& f, const QuadratureConfig& cfg,
                             bool absolute_stop = false) {
  validate(cfg);
  std::size_t n = cfg.initial_nodes;
  double sum = grid_sum(f, n, 0.0);
  double mean = sum / static_cast<double>(n);
  MeanOut out;
  out.nodes = n;
  double delta = std::numeric_limits<double>::infinity();
  while (n < cfg.max_nodes) {
    double odd = grid_sum(f, n, 0.5);
    sum += odd;
    n *= 2;
    double next = sum / static_cast<double>(n);
    delta = std::abs(next - mean);
    mean = next;
    out.nodes = n;
    out.refined = true;
    double stop = absolute_stop ? cfg.rel_target
                                : cfg.rel_target * std::max(std::abs(mean), kTiny);
    if (delta <= stop) {
      out.mean = mean;
      out.err_abs = std::max(delta, 8.0 * kEps * std::abs(mean));
      return out;
    }
  }
  out.mean = mean;
  out.flagged = n >= cfg.max_nodes && std::isfinite(delta) &&
                delta > (absolute_stop ? cfg.rel_target
                                       : cfg.rel_target * std::max(std::abs(mean), kTiny));
  out.err_abs = std::max(std::isfinite(delta) ? delta : 0.0, 8.0 * kEps * std::abs(mean));
  return out;
}

// ---- memoization ----------------------------------------------------------
//
// Campaigns evaluate the same ||P||_p and two-term norms thousands of times.
// Results are pure functions of (coefficient bits, p, config), so a keyed
// cache returns bit-identical values regardless of thread scheduling.

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_double(std::uint64_t h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return mix64(h ^ bits);
}

struct CacheEntry {
  std::vector<double> key;  // exact doubles: coeffs, p tag/value, cfg
  NormResult result;
};

class NormCache {
 public:
  const NormResult* find(std::uint64_t h, const std::vector<double>& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto range = map_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (it->second.key == key) return &it->second.result;
    }
    return nullptr;
  }
  void insert(std::uint64_t h, std::vector<double> key, const NormResult& r) {
    std::lock_guard<std::mutex> lock(mu_);
    if (map_.size() > (1u << 18)) map_.clear();
    map_.emplace(h, CacheEntry{std::move(key), r});
  }

 private:
  std::mutex mu_;
  std::unordered_multimap<std::uint64_t, CacheEntry> map_;
};

NormCache& cache() {
  static NormCache c;
  return c;
}

std::vector<double> make_key(const Polynomial& p, const ExponentP& exponent,
                             const QuadratureConfig& cfg) {
  std::vector<double> key;
  key.reserve(2 * p.coeffs().size() + 5);
  for (Complex c : p.coeffs()) {
    key.push_back(c.real());
    key.push_back(c.imag());
  }
  key.push_back(static_cast<double>(exponent.kind()));
  key.push_back(exponent.is_finite() ? exponent.value() : 0.0);
  key.push_back(static_cast<double>(cfg.initial_nodes));
  key.push_back(static_cast<double>(cfg.max_nodes));
  key.push_back(cfg.rel_target);
  return key;
}

std::uint64_t key_hash(const std::vector<double>& key) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (double v : key) h = hash_double(h, v);
  return h;
}

NormResult norm_zero_impl(const Polynomial& p, const QuadratureConfig& cfg);
NormResult finite_norm_impl(const Polynomial& p, double exponent,
                            const QuadratureConfig& cfg);

}  // namespace

ExponentP ExponentP::finite(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("ExponentP::finite requires p > 0");
  }
  return ExponentP(Kind::finite, p);
}

double ExponentP::value() const {
  if (kind_ != Kind::finite) {
    throw std::logic_error("ExponentP::value on non-finite exponent");
  }
  return value_;
}

std::string ExponentP::str() const {
  switch (kind_) {
    case Kind::zero: return "0";
    case Kind::infinity: return "inf";
    case Kind::finite: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", value_);
      // trim to shortest representation that round-trips
      for (int prec = 1; prec < 17; ++prec) {
        char probe[32];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, value_);
        if (std::strtod(probe, nullptr) == value_) return probe;
      }
      return buf;
    }
  }
  return "?";
}

ExponentP ExponentP::parse(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (t == "inf" || t == "infinity") return infinity();
  if (t == "0") return zero();
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0' || !std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("cannot parse exponent p from '" + text + "'");
  }
  return v == 0.0 ? zero() : finite(v);
}

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::trapezoid: return "trapezoid";
    case NormMethod::refined_trapezoid: return "refined-trapezoid";
    case NormMethod::jensen_roots: return "jensen-roots";
    case NormMethod::grid_max_refined: return "grid-max-refined";
    case NormMethod::closed_form: return "closed-form";
  }
  return "?";
}

PowerMean circle_power_mean(const Polynomial& p, double exponent,
                            const QuadratureConfig& cfg) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("circle_power_mean requires finite p > 0");
  }
  const auto& coeffs = p.coeffs();
  auto f = [&](double theta) {
    Complex z{std::cos(theta), std::sin(theta)};
    Complex acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
      acc = acc * z + *it;
    }
    return abs_pow(acc, exponent);
  };
  MeanOut m = refine_periodic_mean(f, cfg);
  return PowerMean{m.mean, m.err_abs, m.flagged, m.nodes};
}

namespace {

NormResult finite_norm_impl(const Polynomial& p, double exponent,
                            const QuadratureConfig& cfg) {
  const auto& coeffs = p.coeffs();
  auto f = [&](double theta) {
    Complex z{std::cos(theta), std::sin(theta)};
    Complex acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
      acc = acc * z + *it;
    }
    return abs_pow(acc, exponent);
  };
  MeanOut m = refine_periodic_mean(f, cfg);
  NormResult r;
  r.p = ExponentP::finite(exponent);
  r.method = m.refined ? NormMethod::refined_trapezoid : NormMethod::trapezoid;
  r.flagged = m.flagged;
  if (m.mean <= 0.0) {
    r.value = 0.0;
    r.err_abs = std::pow(std::max(m.err_abs, 0.0), 1.0 / exponent);
    return r;
  }
  r.value = std::pow(m.mean, 1.0 / exponent);
  // d(m^(1/p)) = m^(1/p) * dm / (p m), plus a rounding floor.
  r.err_abs = r.value * (m.err_abs / (exponent * m.mean)) + 4.0 * kEps * r.value;
  return r;
}

NormResult norm_zero_impl(const Polynomial& p, const QuadratureConfig& cfg) {
  NormResult r;
  r.p = ExponentP::zero();
  r.method = NormMethod::jensen_roots;
  if (p.degree() == 0) {
    r.value = std::abs(p.constant());
    r.err_abs = 2.0 * kEps * r.value;
    return r;
  }

  const auto& coeffs = p.coeffs();
  auto log_f = [&](double theta) {
    Complex z{std::cos(theta), std::sin(theta)};
    Complex acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
      acc = acc * z + *it;
    }
    return log_abs(acc);
  };

  // Strip any trailing zero coefficients (formal polynomials) so the root
  // finder sees the effective degree.
  std::vector<Complex> effective = coeffs;
  while (effective.size() > 1 && effective.back() == Complex{0.0, 0.0}) {
    effective.pop_back();
  }
  const Polynomial eff = Polynomial::formal(std::move(effective));
  if (eff.degree() == 0) {
    r.value = std::abs(eff.constant());
    r.err_abs = 2.0 * kEps * r.value;
    return r;
  }

  bool have_roots = false;
  RootSet rs;
  try {
    rs = roots(eff);
    have_roots = true;
  } catch (const root_failure&) {
    have_roots = false;
  }

  if (!have_roots || rs.accuracy > 1e-6) {
    // Quadrature-only fallback for ill-conditioned roots; always flagged.
    MeanOut m = refine_periodic_mean(log_f, cfg, /*absolute_stop=*/true);
    r.method = m.refined ? NormMethod::refined_trapezoid : NormMethod::trapezoid;
    r.value = std::exp(m.mean);
    r.err_abs = r.value * (m.err_abs + 4.0 * kEps);
    r.flagged = true;
    return r;
  }

  double value = std::abs(eff.leading());
  double min_circle_gap = std::numeric_limits<double>::infinity();
  for (Complex root : rs.roots) {
    double mod = std::abs(root);
    if (mod > 1.0) value *= mod;
    min_circle_gap = std::min(min_circle_gap, std::abs(mod - 1.0));
  }
  r.value = value;
  r.err_abs = value * (static_cast<double>(eff.degree()) * rs.accuracy + 4.0 * kEps);

  if (min_circle_gap > 1e-3) {
    MeanOut m = refine_periodic_mean(log_f, cfg, /*absolute_stop=*/true);
    double quad = std::exp(m.mean);
    double gap = std::abs(quad - value);
    if (gap > 1e-8 * std::max(value, quad) + m.err_abs * quad) {
      r.flagged = true;
      r.err_abs = std::max(r.err_abs, gap);
    }
  }
  return r;
}

}  // namespace

NormResult norm_inf(const Polynomial& p) {
  NormResult r;
  r.p = ExponentP::infinity();
  r.method = NormMethod::grid_max_refined;
  const auto& coeffs = p.coeffs();
  auto f = [&](double theta) {
    Complex z{std::cos(theta), std::sin(theta)};
    Complex acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
      acc = acc * z + *it;
    }
    return std::abs(acc);
  };
  if (p.degree() == 0) {
    r.value = std::abs(p.constant());
    r.err_abs = 2.0 * kEps * r.value;
    return r;
  }

  constexpr std::size_t kScan = 8192;
  std::vector<double> vals(kScan);
  const double h = 2.0 * M_PI / kScan;
  for (std::size_t k = 0; k < kScan; ++k) vals[k] = f(k * h);

  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < kScan; ++k) {
    double prev = vals[(k + kScan - 1) % kScan];
    double next = vals[(k + 1) % kScan];
    if (vals[k] >= prev && vals[k] >= next) candidates.push_back(k);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  if (candidates.size() > 8) candidates.resize(8);

  double best = *std::max_element(vals.begin(), vals.end());
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t k : candidates) {
    double a = (static_cast<double>(k) - 1.0) * h;
    double b = (static_cast<double>(k) + 1.0) * h;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 > f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = f(x1);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = f(x2);
      }
    }
    best = std::max({best, f1, f2});
  }
  r.value = best;
  r.err_abs = 1e-13 * best + kTiny;
  return r;
}

NormResult norm_zero(const Polynomial& p, const QuadratureConfig& cfg) {
  validate(cfg);
  auto key = make_key(p, ExponentP::zero(), cfg);
  auto h = key_hash(key);
  if (const NormResult* hit = cache().find(h, key)) return *hit;
  NormResult r = norm_zero_impl(p, cfg);
  cache().insert(h, std::move(key), r);
  return r;
}

NormResult norm_p(const Polynomial& p, const ExponentP& exponent,
                  const QuadratureConfig& cfg) {
  switch (exponent.kind()) {
    case ExponentP::Kind::infinity: return norm_inf(p);
    case ExponentP::Kind::zero: return norm_zero(p, cfg);
    case ExponentP::Kind::finite: break;
  }
  validate(cfg);
  auto key = make_key(p, exponent, cfg);
  auto h = key_hash(key);
  if (const NormResult* hit = cache().find(h, key)) return *hit;
  NormResult r = finite_norm_impl(p, exponent.value(), cfg);
  cache().insert(h, std::move(key), r);
  return r;
}

NormResult two_term_norm(Complex alpha, Complex beta, const ExponentP& exponent,
                         const QuadratureConfig& cfg) {
  const double a = std::abs(alpha);
  const double b = std::abs(beta);
  if (a == 0.0 && b == 0.0) {
    throw std::invalid_argument("two_term_norm: alpha and beta are both zero");
  }
  // The mean of |alpha e^{it} + beta|^p depends only on the moduli.
  switch (exponent.kind()) {
    case ExponentP::Kind::infinity: {
      NormResult r;
      r.p = exponent;
      r.method = NormMethod::closed_form;
      r.value = a + b;
      r.err_abs = 2.0 * kEps * r.value;
      return r;
    }
    case ExponentP::Kind::zero: {
      NormResult r;
      r.p = exponent;
      r.method = NormMethod::closed_form;
      r.value = std::max(a, b);
      r.err_abs = 2.0 * kEps * r.value;
      return r;
    }
    case ExponentP::Kind::finite: break;
  }
  if (a == 0.0 || b == 0.0) {
    NormResult r;
    r.p = exponent;
    r.method = NormMethod::closed_form;
    r.value = std::max(a, b);
    r.err_abs = 2.0 * kEps * r.value;
    return r;
  }
  return norm_p(Polynomial({Complex{b, 0.0}, Complex{a, 0.0}}), exponent, cfg);
}

}  // namespace visserlab
