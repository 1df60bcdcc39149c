#include "spw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "spw/error.hpp"

namespace spw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// A panel whose two-level difference is this close to its rounding level
// cannot be improved by bisection.
constexpr double kRoundoffFactor = 64.0;
constexpr int kResyncInterval = 256;

GaussLegendreRule make_rule(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node for the weight
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct PanelSums {
  cplx value;
  double abs;
};

PanelSums apply_rule(const RealToComplex& fn, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  cplx v{};
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const cplx f = fn(mid + half * rule.nodes[k]);
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand is not finite at t=" << mid + half * rule.nodes[k];
      throw Error(ErrorKind::IllConditioned, msg.str());
    }
    v += rule.weights[k] * f;
    s += rule.weights[k] * std::abs(f);
  }
  return {v * half, s * half};
}

struct Panel {
  double a;
  double b;
  cplx whole;
  cplx left;
  cplx right;
  double abs;
  double err;
};

void refine(Panel& p, const RealToComplex& fn, const GaussLegendreRule& rule) {
  const double m = 0.5 * (p.a + p.b);
  const PanelSums l = apply_rule(fn, p.a, m, rule);
  const PanelSums r = apply_rule(fn, m, p.b, rule);
  p.left = l.value;
  p.right = r.value;
  p.abs = l.abs + r.abs;
  p.err = std::abs(p.whole - (p.left + p.right));
}

struct Adaptive {
  cplx value{};
  double err = 0.0;
  double abs = 0.0;
  int panels = 0;
};

// Neumaier summation over panels ordered by position.
Adaptive collect(std::vector<Panel>& panels) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  Adaptive out;
  for (const Panel& p : panels) {
    const cplx v = p.left + p.right;
    add(sr, cr, v.real());
    add(si, ci, v.imag());
    out.err += p.err;
    out.abs += p.abs;
  }
  out.value = cplx(sr + cr, si + ci);
  out.panels = static_cast<int>(panels.size());
  return out;
}

Adaptive adaptive(const RealToComplex& fn, double a, double b, const QuadratureBudget& budget,
                  double max_len, double rel_tol, double abs_target, int panel_limit) {
  if (a == b) return {};
  const GaussLegendreRule& rule = gauss_legendre(budget.panel_order);

  double n0 = 2.0;
  if (std::isfinite(max_len) && max_len > 0.0) n0 = std::max(n0, std::ceil((b - a) / max_len));
  if (n0 > panel_limit) {
    std::ostringstream msg;
    msg << "needs " << n0 << " initial panels, limit " << panel_limit;
    throw Error(ErrorKind::BudgetExceeded, msg.str());
  }

  const int n_init = static_cast<int>(n0);
  std::vector<Panel> panels;
  panels.reserve(n_init * 2);
  for (int i = 0; i < n_init; ++i) {
    const double pa = a + (b - a) * i / n_init;
    const double pb = i + 1 == n_init ? b : a + (b - a) * (i + 1) / n_init;
    Panel p{pa, pb, apply_rule(fn, pa, pb, rule).value, {}, {}, 0.0, 0.0};
    refine(p, fn, rule);
    panels.push_back(p);
  }

  auto by_err = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::make_heap(panels.begin(), panels.end(), by_err);

  auto totals = [&panels] {
    cplx v{};
    double e = 0.0;
    for (const Panel& p : panels) {
      v += p.left + p.right;
      e += p.err;
    }
    return std::pair{v, e};
  };
  auto [total, total_err] = totals();

  for (int step = 1;; ++step) {
    const double target = std::max(rel_tol * std::abs(total), abs_target);
    if (total_err <= target) break;
    const Panel& worst = panels.front();
    if (worst.err <= kRoundoffFactor * kEps * worst.abs) break;
    if (static_cast<int>(panels.size()) >= panel_limit) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "panel limit " << panel_limit << " reached on [" << a << ", " << b
          << "] with error estimate " << total_err << " > " << target;
      throw Error(ErrorKind::BudgetExceeded, msg.str());
    }

    std::pop_heap(panels.begin(), panels.end(), by_err);
    Panel parent = panels.back();
    panels.pop_back();
    const double m = 0.5 * (parent.a + parent.b);
    Panel lo{parent.a, m, parent.left, {}, {}, 0.0, 0.0};
    Panel hi{m, parent.b, parent.right, {}, {}, 0.0, 0.0};
    refine(lo, fn, rule);
    refine(hi, fn, rule);
    total += (lo.left + lo.right + hi.left + hi.right) - (parent.left + parent.right);
    total_err += lo.err + hi.err - parent.err;
    panels.push_back(lo);
    std::push_heap(panels.begin(), panels.end(), by_err);
    panels.push_back(hi);
    std::push_heap(panels.begin(), panels.end(), by_err);

    if (step % kResyncInterval == 0) std::tie(total, total_err) = totals();
  }
  return collect(panels);
}

}  // namespace

void QuadratureBudget::validate() const {
  std::ostringstream msg;
  if (!(rel_tol >= 1e-14) || !std::isfinite(rel_tol)) {
    msg << "rel_tol must be >= 1e-14, got " << rel_tol;
  } else if (!(abs_floor > 0.0) || !std::isfinite(abs_floor)) {
    msg << "abs_floor must be positive, got " << abs_floor;
  } else if (max_panels <= 0 || panel_order <= 0) {
    msg << "max_panels and panel_order must be positive";
  } else if (static_cast<double>(max_panels) * panel_order > 1e7) {
    msg << "max_panels*panel_order must not exceed 1e7";
  } else {
    return;
  }
  throw Error(ErrorKind::InvalidArgument, msg.str());
}

QuadratureBudget QuadratureBudget::tightened(double factor) const {
  QuadratureBudget b = *this;
  b.rel_tol = std::max(1e-14, rel_tol * factor);
  b.abs_floor = abs_floor * factor;
  return b;
}

const GaussLegendreRule& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

IntegralResult integrate_segment(const RealToComplex& fn, double a, double b,
                                 const QuadratureBudget& budget, double max_panel_length) {
  budget.validate();
  if (!(a <= b)) {
    std::ostringstream msg;
    msg << "segment requires a <= b, got [" << a << ", " << b << "]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  const Adaptive r = adaptive(fn, a, b, budget, max_panel_length, budget.rel_tol, budget.abs_floor,
                              budget.max_panels);
  IntegralResult out;
  out.value = r.value;
  out.est_error = r.err + 16.0 * kEps * r.abs;
  out.panels_used = r.panels;
  return out;
}

IntegralResult integrate_ray(const RealToComplex& fn, const DecayModel& decay,
                             const QuadratureBudget& budget) {
  budget.validate();
  const double m = decay.rate;
  const double amp = decay.amplitude;
  if (!(m > 0.0) || !std::isfinite(m)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "decay rate must be positive, got " << m;
    throw Error(ErrorKind::InvalidDecay, msg.str());
  }
  if (!(amp >= 0.0) || !std::isfinite(amp)) {
    std::ostringstream msg;
    msg << "decay amplitude must be finite and nonnegative, got " << amp;
    throw Error(ErrorKind::InvalidDecay, msg.str());
  }
  if (amp == 0.0) return {};

  double max_len = 4.0 / m;
  if (decay.frequency > 0.0) max_len = std::min(max_len, 2.0 * std::numbers::pi / decay.frequency);
  if (decay.feature_length > 0.0) max_len = std::min(max_len, decay.feature_length);

  auto tail = [&](double T) { return amp * std::exp(-m * T) / m; };
  auto cutoff = [&](double target) { return std::max(0.0, std::log(amp / (m * target)) / m); };

  // First pass sized against the envelope's own scale A/m, which bounds |value|.
  const double T1 = cutoff(0.25 * budget.rel_tol * (amp / m));
  const Adaptive main = adaptive(fn, 0.0, T1, budget, max_len, 0.5 * budget.rel_tol,
                                 0.25 * budget.abs_floor, budget.max_panels);

  IntegralResult out;
  out.value = main.value;
  out.panels_used = main.panels;
  double err = main.err;
  double abs = main.abs;
  double T = T1;

  const double target = std::max(budget.abs_floor, budget.rel_tol * std::abs(main.value));
  if (tail(T1) > 0.25 * target) {
    const double T2 = cutoff(0.25 * target);
    const Adaptive ext = adaptive(fn, T1, T2, budget, max_len, 0.0, 0.25 * target,
                                  budget.max_panels - main.panels);
    out.value += ext.value;
    out.panels_used += ext.panels;
    err += ext.err;
    abs += ext.abs;
    T = T2;
  }
  out.truncation_T = T;
  out.est_error = err + tail(T) + 16.0 * kEps * abs;
  return out;
}

double cauchy_kernel_check(cplx z, const QuadratureBudget& budget) {
  if (!(z.real() < 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "kernel identity requires Re z < 0, got z=" << z;
    throw Error(ErrorKind::InvalidDecay, msg.str());
  }
  const DecayModel decay{-z.real(), 1.0, std::abs(z.imag())};
  const IntegralResult r = integrate_ray([z](double w) { return std::exp(w * z); }, decay, budget);
  return std::abs(1.0 / z + r.value);
}

}  // namespace spw
