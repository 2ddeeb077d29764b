#pragma once

// Test-only oracles: straight-line transcriptions of the series being
// tested, kept independent of the library code paths they check.

#include <vector>

#include "cantor/rational.hpp"

namespace cantor::oracle {

// sum e_k / (q_1 ... q_k) over explicit base lists.
inline Rational cantor_sum(const std::vector<int>& bases, const std::vector<int>& digits) {
  Rational sum(0);
  Integer prod(1);
  for (size_t k = 0; k < digits.size(); ++k) {
    prod *= bases[k];
    sum += Rational(digits[k], prod);
  }
  return sum;
}

// sum d_k / q^k.
inline Rational qary_sum(int q, const std::vector<int>& digits) {
  Rational sum(0);
  Integer qpow(1);
  for (int d : digits) {
    qpow *= q;
    sum += Rational(d, qpow);
  }
  return sum;
}

// Partial sums of the alternating series sum (-1)^{n+1}(1+e_n)/(q_1...q_n)
// with digits read as zero beyond the stored word.
inline std::vector<Rational> alternating_partials(const std::vector<int>& bases,
                                                  const std::vector<int>& digits,
                                                  size_t terms) {
  std::vector<Rational> partials;
  Rational sum(0);
  Integer prod(1);
  for (size_t n = 1; n <= terms; ++n) {
    prod *= bases[n - 1];
    int e = n <= digits.size() ? digits[n - 1] : 0;
    Rational term(1 + e, prod);
    sum += (n % 2 == 1) ? term : -term;
    partials.push_back(sum);
  }
  return partials;
}

// Left-endpoint Riemann sum of f over all rank-n cylinders:
// sum over words c of f(c) * |cylinder|, with f transcribed directly.
inline Rational riemann_f(const std::vector<int>& bases, int q, int rank) {
  std::vector<int> word(static_cast<size_t>(rank), 0);
  Rational total(0);
  Integer cell(1);
  for (int k = 0; k < rank; ++k) cell *= bases[static_cast<size_t>(k)];

  // odometer over all digit words of length `rank`
  while (true) {
    total += qary_sum(q, word) / Rational(cell);
    int pos = rank - 1;
    while (pos >= 0) {
      if (++word[static_cast<size_t>(pos)] < bases[static_cast<size_t>(pos)]) break;
      word[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return total;
}

// Direct transcription of the Salem series over explicit columns (columns
// repeat the last entry beyond the stored list).
inline Rational salem_F(const std::vector<std::vector<Rational>>& columns,
                        const std::vector<int>& digits, int terms) {
  auto column = [&](int k) -> const std::vector<Rational>& {
    return columns[static_cast<size_t>(k) < columns.size() ? static_cast<size_t>(k)
                                                           : columns.size() - 1];
  };
  Rational value(0);
  Rational prod(1);
  for (int k = 0; k < terms; ++k) {
    const auto& col = column(k);
    int e = static_cast<size_t>(k) < digits.size() ? digits[static_cast<size_t>(k)] : 0;
    Rational b(0);
    for (int j = 0; j < e; ++j) b += col[static_cast<size_t>(j)];
    value += b * prod;
    prod *= col[static_cast<size_t>(e)];
  }
  return value;
}

// Same with the even-level index reflection of the alternating variant.
inline Rational salem_F_tilde(const std::vector<std::vector<Rational>>& columns,
                              const std::vector<int>& digits, int terms) {
  auto column = [&](int k) -> const std::vector<Rational>& {
    return columns[static_cast<size_t>(k) < columns.size() ? static_cast<size_t>(k)
                                                           : columns.size() - 1];
  };
  Rational value(0);
  Rational prod(1);
  for (int k = 0; k < terms; ++k) {
    const auto& col = column(k);
    int level = k + 1;
    int e = static_cast<size_t>(k) < digits.size() ? digits[static_cast<size_t>(k)] : 0;
    int idx = level % 2 == 0 ? static_cast<int>(col.size()) - 1 - e : e;
    Rational b(0);
    for (int j = 0; j < idx; ++j) b += col[static_cast<size_t>(j)];
    value += b * prod;
    prod *= col[static_cast<size_t>(idx)];
  }
  return value;
}

}  // namespace cantor::oracle
