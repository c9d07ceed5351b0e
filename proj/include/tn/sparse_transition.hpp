#ifndef TN_SPARSE_TRANSITION_HPP
#define TN_SPARSE_TRANSITION_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tn/numerics.hpp"

namespace tn {

/// One chain tensor as an implicit sparse row -> column map. Each entry
/// (row, col, exponent) carries the amplitude e^{exponent}. Forbidden
/// transitions (e^{-tau * inf} = 0) are simply absent. Entries are kept
/// sorted by (row, col) and duplicates are merged at build time, combining
/// their amplitudes (exponents merge through log-sum-exp so the linear
/// amplitude stays the exact sum).
struct SparseTransition {
  struct Entry {
    int row;
    int col;
    double exponent;
  };

  int in_dim = 0;
  int out_dim = 0;
  std::vector<Entry> entries;

  SparseTransition() = default;
  SparseTransition(int in, int out) : in_dim(in), out_dim(out) {}

  void add(int row, int col, double exponent) {
    entries.push_back({row, col, exponent});
  }

  /// Sort, merge duplicate (row, col) pairs, and validate index ranges.
  void finalize() {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::size_t w = 0;
    for (std::size_t r = 0; r < entries.size(); ++r) {
      const Entry& e = entries[r];
      if (e.row < 0 || e.row >= in_dim || e.col < 0 || e.col >= out_dim)
        throw std::out_of_range("sparse transition entry out of range");
      if (w > 0 && entries[w - 1].row == e.row && entries[w - 1].col == e.col) {
        entries[w - 1].exponent = log_add_exp(entries[w - 1].exponent, e.exponent);
      } else {
        entries[w++] = e;
      }
    }
    entries.resize(w);
  }

  std::int64_t nnz() const { return static_cast<std::int64_t>(entries.size()); }
};

/// out[row] = sum_col T(row, col) * tail[col], one multiply-add per stored
/// entry. In log mode each row accumulates through max-factored log-sum-exp.
inline AmplitudeVector apply(const SparseTransition& t, const AmplitudeVector& tail) {
  if (tail.size() != t.out_dim)
    throw std::invalid_argument("transition/tail dimension mismatch");
  AmplitudeVector out(tail.mode, t.in_dim);
  const auto& es = t.entries;
  if (tail.mode == Mode::Linear) {
    for (const auto& e : es) out.values[e.row] += std::exp(e.exponent) * tail.values[e.col];
    return out;
  }
  std::size_t i = 0;
  while (i < es.size()) {
    const int row = es[i].row;
    std::size_t j = i;
    double m = kNegInf;
    for (; j < es.size() && es[j].row == row; ++j) {
      const double term = es[j].exponent + tail.values[es[j].col];
      if (term > m) m = term;
    }
    if (m != kNegInf) {
      double s = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        const double term = es[k].exponent + tail.values[es[k].col];
        if (term != kNegInf) s += std::exp(term - m);
      }
      out.values[row] = m + std::log(s);
    }
    i = j;
  }
  return out;
}

}  // namespace tn

#endif  // TN_SPARSE_TRANSITION_HPP
