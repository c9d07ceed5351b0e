#ifndef TN_NUMERICS_HPP
#define TN_NUMERICS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tn {

/// Numeric domain for amplitudes e^{tau * cost}.
///
/// Linear holds the amplitude itself; LogStabilized holds its natural
/// logarithm, with -inf as the exact representation of a zero amplitude.
enum class Mode { Linear, LogStabilized };

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct NoFeasibleError : std::runtime_error {
  NoFeasibleError() : std::runtime_error("no feasible configuration") {}
  explicit NoFeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A single amplitude in one of the two numeric modes.
struct Amplitude {
  Mode mode = Mode::Linear;
  double value = 0.0;  // Linear: the amplitude (>= 0); Log: its log (-inf == zero)

  bool is_zero() const {
    return mode == Mode::Linear ? value == 0.0 : value == kNegInf;
  }
  /// Log of the amplitude, valid in either mode.
  double log_value() const {
    return mode == Mode::Linear ? std::log(value) : value;
  }
};

inline Amplitude amp_zero(Mode mode) {
  return {mode, mode == Mode::Linear ? 0.0 : kNegInf};
}

/// Amplitude representing e^x. x = -inf encodes a forbidden configuration
/// and yields the zero amplitude in both modes.
inline Amplitude amp_from_exponent(double x, Mode mode) {
  if (x == kNegInf) return amp_zero(mode);
  return {mode, mode == Mode::Linear ? std::exp(x) : x};
}

inline void check_same_mode(const Amplitude& a, const Amplitude& b) {
  if (a.mode != b.mode) throw std::invalid_argument("amplitude mode mismatch");
}

inline Amplitude amp_mul(const Amplitude& a, const Amplitude& b) {
  check_same_mode(a, b);
  if (a.mode == Mode::Linear) return {a.mode, a.value * b.value};
  if (a.is_zero() || b.is_zero()) return amp_zero(a.mode);
  return {a.mode, a.value + b.value};
}

/// log(e^a + e^b) with the max factored out; never overflows for finite inputs.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(a > b ? a - b : b - a)));
}

inline Amplitude amp_add(const Amplitude& a, const Amplitude& b) {
  check_same_mode(a, b);
  if (a.mode == Mode::Linear) return {a.mode, a.value + b.value};
  return {a.mode, log_add_exp(a.value, b.value)};
}

/// Index of the strictly greatest amplitude; ties go to the lowest index.
/// All-zero input signals that no feasible completion exists.
inline int argmax_amplitudes(const std::vector<Amplitude>& v) {
  if (v.empty()) throw std::invalid_argument("argmax of empty amplitude list");
  int best = 0;
  bool any = !v[0].is_zero();
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    check_same_mode(v[0], v[i]);
    if (!v[i].is_zero()) any = true;
    if (v[i].value > v[best].value) best = i;
  }
  if (!any) throw NoFeasibleError();
  return best;
}

/// Overflow / precision diagnostics accumulated over a contraction.
struct NumericReport {
  bool saturated = false;
  double max_log_magnitude = kNegInf;
  std::int64_t nonfinite_count = 0;

  void merge(const NumericReport& o) {
    saturated = saturated || o.saturated;
    if (o.max_log_magnitude > max_log_magnitude) max_log_magnitude = o.max_log_magnitude;
    nonfinite_count += o.nonfinite_count;
  }
};

/// Dense vector of amplitudes over weight states or vertices.
struct AmplitudeVector {
  Mode mode = Mode::Linear;
  Eigen::VectorXd values;  // Linear: amplitudes; Log: log amplitudes (-inf == zero)

  AmplitudeVector() = default;
  AmplitudeVector(Mode m, Eigen::Index n)
      : mode(m), values(Eigen::VectorXd::Constant(n, m == Mode::Linear ? 0.0 : kNegInf)) {}

  Eigen::Index size() const { return values.size(); }
  Amplitude at(Eigen::Index i) const { return {mode, values[i]}; }
  bool is_zero(Eigen::Index i) const {
    return mode == Mode::Linear ? values[i] == 0.0 : values[i] == kNegInf;
  }

  /// Record saturation / magnitude info for every entry into `report`.
  void observe(NumericReport& report, double log_ceiling) const {
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      const double x = values[i];
      if (mode == Mode::Linear) {
        if (!std::isfinite(x)) {
          ++report.nonfinite_count;
          report.saturated = true;
        } else if (x > 0.0) {
          const double lm = std::log(x);
          if (std::abs(lm) > report.max_log_magnitude) report.max_log_magnitude = std::abs(lm);
        }
      } else {
        if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) {
          ++report.nonfinite_count;
          report.saturated = true;
        } else if (x != kNegInf) {
          if (std::abs(x) > report.max_log_magnitude) report.max_log_magnitude = std::abs(x);
        }
      }
    }
    if (report.max_log_magnitude > log_ceiling) report.saturated = true;
  }
};

}  // namespace tn

#endif  // TN_NUMERICS_HPP
