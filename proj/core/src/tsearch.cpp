#include <algorithm>
#include <cmath>
#include <limits>

#include "qrecov/error.hpp"
#include "qrecov/verify.hpp"

namespace qrecov {

namespace {

// Values closer than a few ulps count as ties, so flat objectives keep t = 0.
bool better(double v, double t, double best_v, double best_t) {
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(best_v));
  if (v > best_v + noise) return true;
  return v >= best_v - noise && std::abs(t) < std::abs(best_t);
}

}  // namespace

void TSearchConfig::validate() const {
  if (!(t_range > 0.0) || !std::isfinite(t_range)) throw InvalidParameter("t_range must be positive and finite");
  if (coarse_points < 3 || coarse_points % 2 == 0) {
    throw InvalidParameter("coarse_points must be odd and at least 3 so that t = 0 is on the grid");
  }
}

TSearchConfig TSearchConfig::escalated() const {
  TSearchConfig c = *this;
  c.coarse_points = 4 * (coarse_points - 1) + 1;
  return c;
}

TSearchResult t_search(const std::function<double(double)>& objective, const TSearchConfig& cfg) {
  cfg.validate();
  TSearchResult r;
  auto eval = [&](double t) {
    const double v = objective(t);
    if (!std::isfinite(v)) throw ObjectiveError("t-search objective is not finite", t);
    r.trace.push_back({t, v});
    return v;
  };

  const std::size_t n = cfg.coarse_points;
  const std::size_t mid = n / 2;
  const double step = 2.0 * cfg.t_range / static_cast<double>(n - 1);
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = k == mid ? 0.0 : (static_cast<double>(k) - static_cast<double>(mid)) * step;
  }

  std::size_t best_k = mid;
  r.value_at_zero = eval(0.0);
  double best_v = r.value_at_zero;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == mid) continue;
    const double v = eval(grid[k]);
    if (better(v, grid[k], best_v, grid[best_k])) {
      best_v = v;
      best_k = k;
    }
  }
  double best_t = grid[best_k];

  // Golden-section refinement on the bracket around the best grid point.
  double a = grid[best_k == 0 ? 0 : best_k - 1];
  double b = grid[best_k + 1 == n ? n - 1 : best_k + 1];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (std::size_t i = 0; i < cfg.refine_iters; ++i) {
    if (better(fc, c, best_v, best_t)) best_v = fc, best_t = c;
    if (better(fd, d, best_v, best_t)) best_v = fd, best_t = d;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }
  if (better(fc, c, best_v, best_t)) best_v = fc, best_t = c;
  if (better(fd, d, best_v, best_t)) best_v = fd, best_t = d;

  r.t = best_t;
  r.value = best_v;
  std::stable_sort(r.trace.begin(), r.trace.end(), [](const TSample& x, const TSample& y) { return x.t < y.t; });
  return r;
}

}  // namespace qrecov
