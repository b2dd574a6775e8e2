#pragma once

// Running-time exponents gamma(l): the algorithms run in time 2^(gamma(l) n)
// up to polynomial factors, l being the maximum (or minimum) solution ratio.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace repsum {

/// Binary entropy; h(0) = h(1) = 0. Throws ContractViolation outside [0, 1].
double entropy(double x);

enum class CurveKind {
  QuantumShifted,
  ClassicalShifted,
  QuantumEqualMin,
  MitmQuantum,
  MitmClassical,
  RepQuantum,
  RepClassical,
};

std::string_view curve_name(CurveKind kind);
/// Accepts the names above ("quantum_shifted", ...); throws InvalidParameter.
CurveKind parse_curve(std::string_view name);

double gamma_mitm_quantum(double l);     // (h(l) + l) / 3
double gamma_mitm_classical(double l);   // (h(l) + l) / 2
double gamma_rep_quantum(double l);      // (1 + l) / 4, then l / 2 + 1/10 past 3/5
double gamma_rep_classical(double l);    // 1/2, then l past 1/2

double gamma_quantum_shifted(double l);
double gamma_classical_shifted(double l);
double gamma_quantum_equal_min(double lambda);
/// Modulus exponent used by the minimum-ratio algorithm.
double b_equal_min(double lambda);

double gamma(CurveKind kind, double l);

struct Crossovers {
  double quantum_l1;    // (h + l)/3 = (1 + l)/4
  double quantum_l2;    // (h + l)/3 = l/2 + 1/10
  double classical_l1;  // (h + l)/2 = 1/2
  double classical_l2;  // (h + l)/2 = l
  double equal_min_l1;  // (h + l)/3 = 1/2 - (1 - l)/4 h(l / (2 (1 - l)))
  double equal_min_l2;  // same as quantum_l2
};

/// Bisection to 1e-9. Computed once and cached.
const Crossovers& crossovers();

[[noreturn]] void throw_no_bracket();

/// Root of f on [lo, hi] by bisection; throws ContractViolation without a sign change.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-9) {
  double flo = f(lo);
  if ((flo > 0) == (f(hi) > 0)) throw_no_bracket();
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Quantum pair finding: (N M / K)^(1/3) when M <= K N^2, else (M / K)^(1/2).
/// Requires 1 <= K <= N <= M.
double pair_finding_cost(double N, double M, double K);

struct CurvePoint {
  double l;
  double gamma;
};

/// gamma at l = step, 2 step, ... strictly inside (0, 1). Requires 0 < step < 1.
std::vector<CurvePoint> sample_curve(CurveKind kind, double step);

/// (argmax, max) over the sampled grid.
CurvePoint curve_max(CurveKind kind, double step);

/// CSV "l,gamma" with 9 significant digits.
void emit_curve(std::ostream& out, CurveKind kind, double step);

/// Quantum Shifted-Sums curve with its two reference curves:
/// "l,gamma,mitm_quantum,folklore".
void emit_figure1(std::ostream& out, double step);

inline constexpr double kFolkloreQuantumMitm = 0.529;

}  // namespace repsum
