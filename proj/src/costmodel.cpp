#include "repsum/costmodel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "repsum/errors.hpp"

namespace repsum {

void throw_no_bracket() { throw ContractViolation("bisection interval does not bracket a root"); }

double entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ContractViolation("entropy argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

namespace {

double equal_min_first_piece(double lambda) {
  return 0.5 - (1.0 - lambda) / 4.0 * entropy(lambda / (2.0 * (1.0 - lambda)));
}

struct NamedCurve {
  CurveKind kind;
  std::string_view name;
};

constexpr NamedCurve kCurves[] = {
    {CurveKind::QuantumShifted, "quantum_shifted"}, {CurveKind::ClassicalShifted, "classical_shifted"},
    {CurveKind::QuantumEqualMin, "quantum_equal_min"}, {CurveKind::MitmQuantum, "mitm_quantum"},
    {CurveKind::MitmClassical, "mitm_classical"},   {CurveKind::RepQuantum, "rep_quantum"},
    {CurveKind::RepClassical, "rep_classical"},
};

void write_g(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out << buf;
}

}  // namespace

std::string_view curve_name(CurveKind kind) {
  for (const auto& c : kCurves) {
    if (c.kind == kind) return c.name;
  }
  return "unknown";
}

CurveKind parse_curve(std::string_view name) {
  for (const auto& c : kCurves) {
    if (c.name == name) return c.kind;
  }
  throw InvalidParameter("unknown curve kind: " + std::string(name));
}

double gamma_mitm_quantum(double l) { return (entropy(l) + l) / 3.0; }
double gamma_mitm_classical(double l) { return (entropy(l) + l) / 2.0; }
double gamma_rep_quantum(double l) { return l <= 0.6 ? (1.0 + l) / 4.0 : l / 2.0 + 0.1; }
double gamma_rep_classical(double l) { return l <= 0.5 ? 0.5 : l; }

const Crossovers& crossovers() {
  static const Crossovers c = [] {
    Crossovers r{};
    r.quantum_l1 = bisect([](double l) { return gamma_mitm_quantum(l) - (1.0 + l) / 4.0; }, 0.05, 0.5);
    r.quantum_l2 = bisect([](double l) { return gamma_mitm_quantum(l) - (l / 2.0 + 0.1); }, 0.6, 0.99);
    r.classical_l1 = bisect([](double l) { return gamma_mitm_classical(l) - 0.5; }, 0.05, 0.5);
    r.classical_l2 = bisect([](double l) { return gamma_mitm_classical(l) - l; }, 0.5, 0.99);
    r.equal_min_l1 = bisect([](double l) { return gamma_mitm_quantum(l) - equal_min_first_piece(l); }, 0.05, 0.5);
    r.equal_min_l2 = r.quantum_l2;
    return r;
  }();
  return c;
}

double gamma_quantum_shifted(double l) {
  const auto& c = crossovers();
  if (l < c.quantum_l1 || l >= c.quantum_l2) return gamma_mitm_quantum(l);
  return gamma_rep_quantum(l);
}

double gamma_classical_shifted(double l) {
  const auto& c = crossovers();
  if (l < c.classical_l1 || l >= c.classical_l2) return gamma_mitm_classical(l);
  return gamma_rep_classical(l);
}

double gamma_quantum_equal_min(double lambda) {
  const auto& c = crossovers();
  if (lambda < c.equal_min_l1 || lambda >= c.equal_min_l2) return gamma_mitm_quantum(lambda);
  if (lambda < 0.5) return equal_min_first_piece(lambda);
  return gamma_rep_quantum(lambda);
}

double b_equal_min(double lambda) {
  if (lambda <= 0.5) return equal_min_first_piece(lambda);
  if (lambda <= 0.6) return (1.0 + lambda) / 4.0;
  return 0.4;
}

double gamma(CurveKind kind, double l) {
  switch (kind) {
    case CurveKind::QuantumShifted: return gamma_quantum_shifted(l);
    case CurveKind::ClassicalShifted: return gamma_classical_shifted(l);
    case CurveKind::QuantumEqualMin: return gamma_quantum_equal_min(l);
    case CurveKind::MitmQuantum: return gamma_mitm_quantum(l);
    case CurveKind::MitmClassical: return gamma_mitm_classical(l);
    case CurveKind::RepQuantum: return gamma_rep_quantum(l);
    case CurveKind::RepClassical: return gamma_rep_classical(l);
  }
  throw ContractViolation("unhandled curve kind");
}

double pair_finding_cost(double N, double M, double K) {
  if (!(K >= 1.0 && K <= N && N <= M)) throw ContractViolation("pair finding needs 1 <= K <= N <= M");
  if (M <= K * N * N) return std::cbrt(N * M / K);
  return std::sqrt(M / K);
}

std::vector<CurvePoint> sample_curve(CurveKind kind, double step) {
  if (!(step > 0.0 && step < 1.0)) throw InvalidParameter("curve step must lie in (0, 1)");
  std::vector<CurvePoint> out;
  for (std::size_t i = 1; static_cast<double>(i) * step < 1.0 - 1e-9; ++i) {
    const double l = static_cast<double>(i) * step;
    out.push_back({l, gamma(kind, l)});
  }
  return out;
}

CurvePoint curve_max(CurveKind kind, double step) {
  CurvePoint best{0.0, -1.0};
  for (const auto& pt : sample_curve(kind, step)) {
    if (pt.gamma > best.gamma) best = pt;
  }
  return best;
}

void emit_curve(std::ostream& out, CurveKind kind, double step) {
  out << "l,gamma\n";
  for (const auto& pt : sample_curve(kind, step)) {
    write_g(out, pt.l);
    out << ',';
    write_g(out, pt.gamma);
    out << '\n';
  }
}

void emit_figure1(std::ostream& out, double step) {
  out << "l,gamma,mitm_quantum,folklore\n";
  for (const auto& pt : sample_curve(CurveKind::QuantumShifted, step)) {
    write_g(out, pt.l);
    out << ',';
    write_g(out, pt.gamma);
    out << ',';
    write_g(out, gamma_mitm_quantum(pt.l));
    out << ',';
    write_g(out, kFolkloreQuantumMitm);
    out << '\n';
  }
}

}  // namespace repsum
