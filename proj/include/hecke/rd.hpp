#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/coset.hpp"
#include "hecke/operator.hpp"

namespace hecke {

// ---------------------------------------------------------------- degree growth

struct DegreeRecord {
  DoubleCosetKey key;
  double length = 0;
  std::size_t degree = 0;
};

struct DegreeFit {
  std::vector<DegreeRecord> table;
  /// Least-squares fit degree ≈ D(1+L)^t over entries with L > 0.
  double D = 1;
  double t = 0;
  /// Smallest D with degree <= D(1+L)^t_ceil on every entry, t_ceil = ⌈t⌉.
  double minimal_D = 1;
  int t_ceil = 0;
  /// No spread in lengths: t is fixed to 0 and D is the geometric mean degree.
  bool degenerate = false;
};

/// Degrees over the ball of radius rmax. Throws std::invalid_argument on an empty ball.
DegreeFit degree_growth_fit(const HeckePair& pair, const LengthFunction& length, double rmax);
/// Degrees over an explicit family of elements (for lengths without balls).
DegreeFit degree_growth_fit(const HeckePair& pair, const LengthFunction& length,
                            const std::vector<GroupElement>& probes);

// ---------------------------------------------------------------- Haagerup scans

struct LogLogFit {
  double C = 0;
  double s = 0;
  std::size_t points = 0;
};

/// OLS of log y on log(1+x), using only x >= 1.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ScanOptions {
  std::vector<double> radii{4, 8, 16, 32, 64};
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t operator_samples = 16;
  /// k is drawn from the right-coset ball of radius factor·r.
  double k_radius_factor = 4;
  /// Operator truncations use the ball of radius factor·r as domain.
  double operator_radius_factor = 1;
  long coefficient_max = 1000;
  PowerIterationOptions power;
};

enum class SampleKind { ball_characteristic, delta, random };
std::string to_string(SampleKind kind);

/// Nonnegative f supported in the given double-coset ball. Sample 0 is the
/// characteristic function of the ball, the next few are single deltas, the
/// rest carry uniform integer coefficients in [0, coefficient_max].
HeckeElement sample_f(const PairPtr& pair, const BallIndex& ball, std::uint64_t seed,
                      std::size_t radius_index, std::size_t sample_index, std::size_t n_samples,
                      long coefficient_max, SampleKind* kind = nullptr);
/// Nonnegative k on the right-coset ball: characteristic function for even
/// sample indices, uniform integer coefficients for odd ones.
L2Vector sample_k(const PairPtr& pair, const BallIndex& ball, std::uint64_t seed,
                  std::size_t radius_index, std::size_t sample_index, long coefficient_max);

/// ‖f∗k‖² / (‖f‖²‖k‖²), exact. Zero when f or k vanishes.
Rational haagerup_ratio_squared(const HeckeElement& f, const L2Vector& k);

struct RadiusRecord {
  double radius = 0;
  std::size_t ball_double = 0;
  std::size_t ball_right = 0;
  std::size_t samples = 0;
  /// Exact condition (iii) maximum, squared, and its square root.
  Rational max_ratio_exact_sq{0};
  double max_ratio_exact = 0;
  std::string argmax_kind;
  /// Operator scan: max of norm_lower/‖f‖₂ and of the Schur bound/‖f‖₂.
  double max_ratio_operator_lower = 0;
  double schur_upper = 0;
};

struct RDReport {
  std::string pair;
  std::string length;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<RadiusRecord> records;
  LogLogFit fit_exact;
  LogLogFit fit_operator;
  /// Constants (C', s') of the Haagerup inequality obtained from the fitted
  /// polynomial P(r) = C(1+r)^s: P(n) <= C 2^s n^s, then C' = C 2^s (π²/6)^{1/2}.
  double haagerup_C = 0;
  double haagerup_s = 0;
};

/// Exact condition (iii) scan. Requires a locally finite length.
RDReport haagerup_scan_exact(const PairPtr& pair, const LengthFunction& length, const ScanOptions& opts);
/// Operator scan: ratios norm_lower(f)/‖f‖₂, with the Schur bound alongside.
RDReport haagerup_scan_operator(const PairPtr& pair, const LengthFunction& length,
                                const ScanOptions& opts);
/// Both scans, records merged by radius; the fit is taken from the exact scan.
RDReport haagerup_scan(const PairPtr& pair, const LengthFunction& length, const ScanOptions& opts);

// ---------------------------------------------------------------- transfer identities

/// Function on G with finite support.
using GroupFunction = std::map<GroupElement, Rational>;

GroupFunction group_convolve(const GroupFunction& u, const GroupFunction& v);
Rational l2_squared(const GroupFunction& u);

/// f̃(x) = f(HxH) and k̃(x) = k(Hx), as functions on G (H finite).
GroupFunction lift(const HeckeElement& f);
GroupFunction lift(const L2Vector& k);
/// f̄(HgH) = Σ_{i,j} f(h_i g h_j) and k̄(Hg) = Σ_i k(h_i g).
HeckeElement bar_double(const PairPtr& pair, const GroupFunction& f);
L2Vector bar_right(const PairPtr& pair, const GroupFunction& k);

struct TransferCheck {
  std::string name;
  std::string relation;  // "=" or "<="
  Rational lhs{0};
  Rational rhs{0};
  bool passed = false;
};

struct TransferReport {
  std::size_t n = 0;
  std::size_t working_set = 0;
  std::vector<TransferCheck> checks;
  bool passed() const;
};

/// The identities and bounds of the finite-subgroup transfer argument, all in
/// exact arithmetic, for nonnegative real f and k. Group functions for the
/// bar-projection checks are the lifts and seeded random functions on the
/// working set (supports of the lifts). Throws Unsupported for infinite H and
/// std::invalid_argument for negative or complex inputs.
TransferReport transfer_check(const HeckeElement& f, const L2Vector& k, std::uint64_t seed = 0);

/// max over `trials` seeded nonnegative vectors of (Σx)²/Σx², and the value at
/// the constant vector; both compared against m.
struct CauchySchwarzReport {
  std::size_t m = 0;
  Rational max_ratio{0};
  Rational constant_ratio{0};
  bool bounded = false;
  bool equality_at_constant = false;
};
CauchySchwarzReport cauchy_schwarz_check(std::size_t m, std::size_t trials, std::uint64_t seed);

}  // namespace hecke
