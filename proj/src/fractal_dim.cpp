#include "cantor/fractal_dim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

double moran_lhs(const BlockAlphabet& a, double alpha) {
  double sum = 0.0;
  for (int p : theta(a)) sum += std::pow(static_cast<double>(a.q), -p * alpha);
  return sum;
}

double moran_derivative(const BlockAlphabet& a, double alpha) {
  double lnq = std::log(static_cast<double>(a.q));
  double sum = 0.0;
  for (int p : theta(a)) sum -= lnq * p * std::pow(static_cast<double>(a.q), -p * alpha);
  return sum;
}

}  // namespace

DimensionEstimate dimension_Dg(const BlockAlphabet& a, double tol) {
  if (!(tol > 0)) fail("InvalidArgument", "tolerance must be positive");

  DimensionEstimate est;
  double lo = 1e-12;  // lhs > 1 here: |Theta| >= 2 terms each close to 1
  double hi = 1.0;    // lhs < 1 here: sum q^{-p} < 1/(q-1) * q/(q-1) < 1 for q > 3
  int iters = 0;
  while (hi - lo > 1e-14) {
    double mid = 0.5 * (lo + hi);
    (moran_lhs(a, mid) > 1.0 ? lo : hi) = mid;
    ++iters;
  }
  double root = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    double f = moran_lhs(a, root) - 1.0;
    double df = moran_derivative(a, root);
    double next = root - f / df;
    if (!(next > lo && next < hi)) break;  // keep the bracket
    root = next;
    ++iters;
  }

  est.value = root;
  est.residual = moran_lhs(a, root) - 1.0;
  est.iterations = iters;
  est.lo = lo;
  est.hi = hi;
  return est;
}

double dimension_Eg(const BlockAlphabet& a) {
  return std::log(static_cast<double>(theta_size(a))) / std::log(static_cast<double>(a.q));
}

namespace {

// state while walking block words: x_index holds the first m expanded
// digits (each block contributes at least one, so m blocks pin them all),
// y_index the block digits
struct WalkFrame {
  std::uint64_t x_index = 0;
  std::uint64_t y_index = 0;
  int x_digits = 0;  // expanded digits consumed so far, capped at m
  int depth = 0;
};

WalkFrame advance(const WalkFrame& f, int alpha, int u, int q, int m) {
  WalkFrame next = f;
  next.depth = f.depth + 1;
  next.y_index = f.y_index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(alpha);
  for (int i = 0; i < alpha - 1 && next.x_digits < m; ++i) {
    next.x_index = next.x_index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(u);
    ++next.x_digits;
  }
  if (next.x_digits < m) {
    next.x_index = next.x_index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(alpha);
    ++next.x_digits;
  }
  return next;
}

void collect(const BlockAlphabet& a, const std::vector<int>& letters, const WalkFrame& frame,
             int m, std::uint64_t qm, std::set<std::uint64_t>& occupied) {
  if (frame.depth == m) {
    occupied.insert(frame.x_index * qm + frame.y_index);
    return;
  }
  for (int alpha : letters)
    collect(a, letters, advance(frame, alpha, a.u, a.q, m), m, qm, occupied);
}

// Occupied rank-m squares of the graph. The enumeration partitions by
// first block; partition results merge by set union, so partitions are
// independent of each other and of their order.
std::uint64_t count_occupied_squares(const BlockAlphabet& a, int m, std::uint64_t budget) {
  std::uint64_t words = 1;
  for (int i = 0; i < m; ++i) {
    words *= static_cast<std::uint64_t>(theta_size(a));
    if (words > budget) fail("BudgetExceeded", "enumeration budget exceeded at depth " +
                                                   std::to_string(m));
  }

  std::uint64_t qm = 1;
  for (int i = 0; i < m; ++i) qm *= static_cast<std::uint64_t>(a.q);

  std::vector<int> letters = theta(a);
  std::set<std::uint64_t> occupied;
  for (int first : letters) {
    std::set<std::uint64_t> partition;
    collect(a, letters, advance(WalkFrame{}, first, a.u, a.q, m), m, qm, partition);
    occupied.merge(partition);
  }
  return occupied.size();
}

double slope_through_origin(double log_count, double log_inv_side) {
  return log_inv_side == 0.0 ? 0.0 : log_count / log_inv_side;
}

GraphDimensionFit fit_records(std::vector<BoxCountRecord> records) {
  GraphDimensionFit fit;
  fit.records = std::move(records);
  size_t n = fit.records.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& rec : fit.records) {
    double x = -std::log(to_double(rec.side));
    double y = std::log(static_cast<double>(rec.box_count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (const auto& rec : fit.records) {
    double x = -std::log(to_double(rec.side));
    double y = std::log(static_cast<double>(rec.box_count));
    fit.residuals.push_back(y - (fit.slope * x + fit.intercept));
  }
  return fit;
}

}  // namespace

BoxCountRecord box_count_graph(const BlockAlphabet& a, int m, std::uint64_t budget) {
  if (m < 1) fail("InvalidArgument", "box-count depth must be >= 1");
  BoxCountRecord rec;
  rec.depth = m;
  rec.box_count = count_occupied_squares(a, m, budget);
  rec.side = Rational(1, ipow(Integer(a.q), static_cast<unsigned long>(m)));
  rec.fitted_slope = slope_through_origin(std::log(static_cast<double>(rec.box_count)),
                                          m * std::log(static_cast<double>(a.q)));
  return rec;
}

GraphDimensionFit graph_dimension_estimate(const BlockAlphabet& a, int m_min, int m_max,
                                           std::uint64_t budget) {
  if (m_min < 1 || m_min >= m_max)
    fail("InvalidArgument", "depth range must satisfy 1 <= m_min < m_max");
  std::vector<BoxCountRecord> records;
  for (int m = m_min; m <= m_max; ++m) records.push_back(box_count_graph(a, m, budget));
  return fit_records(std::move(records));
}

std::uint64_t box_count_identity(int q, int m) {
  if (q < 2 || m < 1) fail("InvalidArgument", "identity count needs q >= 2, m >= 1");
  // y = x meets exactly the diagonal squares of the rank-m grid
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(q);
  return count;
}

GraphDimensionFit identity_dimension_estimate(int q, int m_min, int m_max) {
  if (m_min < 1 || m_min >= m_max)
    fail("InvalidArgument", "depth range must satisfy 1 <= m_min < m_max");
  std::vector<BoxCountRecord> records;
  for (int m = m_min; m <= m_max; ++m) {
    BoxCountRecord rec;
    rec.depth = m;
    rec.box_count = box_count_identity(q, m);
    rec.side = Rational(1, ipow(Integer(q), static_cast<unsigned long>(m)));
    rec.fitted_slope = slope_through_origin(std::log(static_cast<double>(rec.box_count)),
                                            m * std::log(static_cast<double>(q)));
    records.push_back(rec);
  }
  return fit_records(std::move(records));
}

}  // namespace cantor
