#pragma once

// (1/2 pi i) int_{c - iT}^{c + iT} F(s) x^{-s} ds by composite Gauss–Legendre
// panels of unit-ish width. Density values are sampled once per rule size and
// reused for every x.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "foxh/error.hpp"
#include "foxh/gamma.hpp"
#include "foxh/quadrature.hpp"

namespace foxh {

inline constexpr int kMaxNodesPerPanel = 512;

// Smallest power-of-two panel size that resolves x^{-it} on unit panels.
inline int panel_nodes_for(double log_x, int floor_n = 8) {
  const double want = 0.7 * std::abs(log_x) + 12.0;
  int n = floor_n;
  while (n < want && n < kMaxNodesPerPanel) n *= 2;
  return n;
}

class LineSynthesis {
 public:
  using Density = std::function<cplx(cplx)>;

  struct Result {
    cplx value;
    double error = 0;  // |I_n - I_{n/2}| at the accepted level
    int nodes = 0;     // panel size accepted
  };

  LineSynthesis(Density f, double c, double half_height)
      : f_(std::move(f)), c_(c), T_(half_height), cache_(std::make_shared<Cache>()) {
    if (!(half_height > 0.0)) fail(ErrorKind::domain, "half_height", "line truncation T must be positive");
    panels_ = std::max(1, static_cast<int>(std::ceil(2.0 * T_)));
  }

  double abscissa() const { return c_; }
  double half_height() const { return T_; }
  int panels() const { return panels_; }

  // Fixed rule with n nodes per panel.
  cplx eval(double log_x, int n) const {
    const Level& lv = level(n);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < lv.y.size(); ++k) acc += lv.wf[k] * std::exp(cplx(0.0, -lv.y[k] * log_x));
    return acc * std::exp(-c_ * log_x) / (2.0 * std::numbers::pi);
  }

  // Sum of |terms|: the roundoff scale of eval().
  double l1(double log_x, int n) const {
    return level(n).l1 * std::exp(-c_ * log_x) / (2.0 * std::numbers::pi);
  }

  // Double the panel size until consecutive levels agree within tol, or
  // within the roundoff floor when tol is below it.
  Result eval_adaptive(double log_x, double tol, int n0 = 8) const {
    int n = panel_nodes_for(log_x, n0);
    cplx prev = eval(log_x, n);
    while (n < kMaxNodesPerPanel) {
      n *= 2;
      const cplx cur = eval(log_x, n);
      const double diff = std::abs(cur - prev);
      const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1(log_x, n);
      if (diff <= std::max(tol, floor)) return {cur, std::max(diff, floor), n};
      prev = cur;
    }
    fail(ErrorKind::numerical_failure, "quadrature_not_converged",
         "line quadrature did not converge at the maximum panel density");
  }

 private:
  struct Level {
    std::vector<double> y;
    std::vector<cplx> wf;  // weight * F(c + i y)
    double l1 = 0;
  };
  struct Cache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const Level>> levels;
  };

  const Level& level(int n) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->levels.find(n);
    if (it != cache_->levels.end()) return *it->second;
    const auto& rule = gauss_legendre(n);
    auto lv = std::make_shared<Level>();
    const double h = 2.0 * T_ / panels_;
    lv->y.reserve(static_cast<std::size_t>(n) * panels_);
    lv->wf.reserve(lv->y.capacity());
    for (int p = 0; p < panels_; ++p) {
      const double mid = -T_ + (p + 0.5) * h;
      for (int k = 0; k < n; ++k) {
        const double y = mid + 0.5 * h * rule.x[k];
        lv->y.push_back(y);
        lv->wf.push_back(0.5 * h * rule.w[k] * f_(cplx(c_, y)));
        lv->l1 += std::abs(lv->wf.back());
      }
    }
    auto [pos, ok] = cache_->levels.emplace(n, std::move(lv));
    return *pos->second;
  }

  Density f_;
  double c_, T_;
  int panels_ = 1;
  std::shared_ptr<Cache> cache_;
};

// Truncation height for line data without an analytic envelope: scan |F| on
// integer heights and stop once it stays below rel_floor * peak for `confirm`
// consecutive units on both sides.
struct LineTail {
  double half_height = 0;
  double peak = 0;
  double tail_magnitude = 0;  // max |F| sampled beyond the cut
};

inline LineTail scan_line_decay(const std::function<cplx(cplx)>& f, double c, double rel_floor = 1e-15,
                                int confirm = 3, int max_height = 500) {
  LineTail out;
  auto mag = [&](double t) {
    const double v = std::abs(f(cplx(c, t)));
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  std::vector<double> up{mag(0.0)}, down{up[0]};
  for (int t = 1; t <= max_height + confirm; ++t) {
    up.push_back(mag(t));
    down.push_back(mag(-t));
  }
  const double peak_all = [&] {
    double p = 0;
    for (std::size_t k = 0; k < up.size(); ++k) p = std::max({p, up[k], down[k]});
    return p;
  }();
  if (!std::isfinite(peak_all) || peak_all == 0.0) {
    if (peak_all == 0.0) return {1.0, 0.0, 0.0};
    fail(ErrorKind::numerical_failure, "non_decaying", "line data is unbounded on the contour");
  }
  for (int t = 1; t <= max_height; ++t) {
    bool quiet = true;
    double tail = 0;
    for (int k = t; k <= t + confirm; ++k) {
      tail = std::max({tail, up[k], down[k]});
      if (up[k] > rel_floor * peak_all || down[k] > rel_floor * peak_all) {
        quiet = false;
        break;
      }
    }
    if (quiet) return {static_cast<double>(t), peak_all, tail};
  }
  fail(ErrorKind::numerical_failure, "non_decaying", "line data does not decay on the contour");
}

}  // namespace foxh
