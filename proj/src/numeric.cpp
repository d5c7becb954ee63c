#include "wof/numeric.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <limits>

namespace wof::numeric {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              int max_iter) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NumericError("bisect: root not bracketed on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 500; ++i) {
    const double scale = std::max(1.0, std::abs(0.5 * (lo + hi)));
    if (hi - lo <= tol * scale) break;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = first + (last - first) * static_cast<double>(i) /
                         static_cast<double>(count - 1);
  }
  return out;
}

std::vector<double> logspace(double first, double last, std::size_t count) {
  if (first <= 0.0 || last <= 0.0) {
    throw DomainError("logspace: endpoints must be positive");
  }
  auto exps = linspace(std::log(first), std::log(last), count);
  for (auto& e : exps) e = std::exp(e);
  if (count > 1) {
    exps.front() = first;
    exps.back() = last;
  }
  return exps;
}

double shannon_entropy(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double binary_entropy(double q) {
  double s = 0.0;
  if (q > 0.0) s -= q * std::log(q);
  if (q < 1.0) s -= (1.0 - q) * std::log1p(-q);
  return s;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

constexpr std::size_t kOrder = 20;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

const Rule& rule() {
  static const Rule r = [] {
    using G = boost::math::quadrature::gauss<double, kOrder>;
    Rule out;
    const auto& abs = G::abscissa();
    const auto& w = G::weights();
    // Boost stores the non-negative half; even order has no zero node.
    std::size_t k = 0;
    for (std::size_t i = 0; i < abs.size(); ++i) {
      out.nodes[k] = -abs[i];
      out.weights[k++] = w[i];
      out.nodes[k] = abs[i];
      out.weights[k++] = w[i];
    }
    return out;
  }();
  return r;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels) {
  const Rule& r = rule();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + (i + 0.5) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < kOrder; ++k) {
      s += r.weights[k] * f(mid + 0.5 * h * r.nodes[k]);
    }
    total += 0.5 * h * s;
  }
  return total;
}

double integrate_2d(const std::function<double(double, double)>& f, double a,
                    double b, double c, double d, int panels, int workers) {
  const Rule& r = rule();
  const double hx = (b - a) / panels;
  const double hy = (d - c) / panels;
  const int n_panels = panels * panels;
  std::vector<double> panel_sums(static_cast<std::size_t>(n_panels));

  auto panel = [&](int idx) {
    const int ix = idx / panels;
    const int iy = idx % panels;
    const double mx = a + (ix + 0.5) * hx;
    const double my = c + (iy + 0.5) * hy;
    double s = 0.0;
    for (std::size_t i = 0; i < kOrder; ++i) {
      const double x = mx + 0.5 * hx * r.nodes[i];
      double row = 0.0;
      for (std::size_t j = 0; j < kOrder; ++j) {
        row += r.weights[j] * f(x, my + 0.5 * hy * r.nodes[j]);
      }
      s += r.weights[i] * row;
    }
    panel_sums[static_cast<std::size_t>(idx)] = 0.25 * hx * hy * s;
  };

  if (workers > 1) {
#pragma omp parallel for num_threads(workers) schedule(static)
    for (int idx = 0; idx < n_panels; ++idx) panel(idx);
  } else {
    for (int idx = 0; idx < n_panels; ++idx) panel(idx);
  }
  return pairwise_sum(panel_sums);
}

AdaptiveResult integrate_2d_adaptive(
    const std::function<double(double, double)>& f, double a, double b,
    double c, double d, double tol, int workers, int max_panels) {
  int panels = 4;
  double prev = integrate_2d(f, a, b, c, d, panels, workers);
  while (panels < max_panels) {
    panels *= 2;
    const double cur = integrate_2d(f, a, b, c, d, panels, workers);
    const double err = std::abs(cur - prev);
    if (err < tol) return {cur, err, panels};
    prev = cur;
  }
  throw NumericError("integrate_2d_adaptive: no convergence to " +
                     std::to_string(tol) + " with " +
                     std::to_string(max_panels) + " panels per axis");
}

}  // namespace wof::numeric
