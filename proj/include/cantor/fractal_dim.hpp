#pragma once

#include <cstdint>
#include <vector>

#include "cantor/block_map.hpp"

namespace cantor {

struct DimensionEstimate {
  double value = 0.0;
  double residual = 0.0;  // equation left side minus 1 at `value`
  int iterations = 0;
  double lo = 0.0;
  double hi = 0.0;
};

// Root of sum_{p in Theta} q^{-p a} = 1 on (0,1); the left side is strictly
// decreasing in a, so bisection brackets the unique root, then a bounded
// Newton polish tightens it.
DimensionEstimate dimension_Dg(const BlockAlphabet& a, double tol);

// log_q |Theta|.
double dimension_Eg(const BlockAlphabet& a);

struct BoxCountRecord {
  int depth = 0;                     // m
  std::uint64_t box_count = 0;       // rank-m squares meeting the graph
  Rational side;                     // q^{-m}
  double fitted_slope = 0.0;         // log(count)/log(q^m) for this record
};

// Counts the squares of side q^{-m} meeting the graph of g by direct
// enumeration of occupied digit-prefix pairs; integer arithmetic only.
BoxCountRecord box_count_graph(const BlockAlphabet& a, int m,
                               std::uint64_t budget = 1'000'000);

struct GraphDimensionFit {
  std::vector<BoxCountRecord> records;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;  // per record, against the fitted line
};

// Least-squares slope of log(box_count) against log(q^m) over a depth range.
GraphDimensionFit graph_dimension_estimate(const BlockAlphabet& a, int m_min, int m_max,
                                           std::uint64_t budget = 1'000'000);

// Calibration: the same count for the graph of y = x on the base-q grid.
std::uint64_t box_count_identity(int q, int m);

GraphDimensionFit identity_dimension_estimate(int q, int m_min, int m_max);

}  // namespace cantor
