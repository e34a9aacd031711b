#pragma once

#include <utility>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/operator.hpp"

namespace hecke {

struct JolissaintParams {
  Rational alpha{1, 2};
  int q = 1;
  long N = 1;
};

/// Throws std::invalid_argument unless 0 < alpha < 1, q >= 1 and N >= 1.
void validate(const JolissaintParams& p);

/// Exact test of L <= N − N^α. Integral lengths are compared exactly through
/// (N − L)^b >= N^a for α = a/b; other lengths in long double.
bool below_threshold(double length, long N, const Rational& alpha, bool integral);

/// Smallest N >= 1 with N^α >= ℓ; ρ_{α,q,N}(f) vanishes from there on.
long vanishing_threshold(double max_length, const Rational& alpha, bool integral);

/// P_r: keeps coefficients with L <= r.
template <class Scalar>
BasicL2Vector<Scalar> project(const BasicL2Vector<Scalar>& xi, const LengthFunction& length, double r);
/// P_{N−N^α}, with the exact threshold comparison.
template <class Scalar>
BasicL2Vector<Scalar> project_threshold(const BasicL2Vector<Scalar>& xi, const LengthFunction& length,
                                        long N, const Rational& alpha);

struct RhoResult {
  long N = 0;
  double rho = 0;
  /// ‖(1−P_N) λ(f) P_{N−N^α}‖ and ‖P_{N−N^α} λ(f) (1−P_N)‖.
  double lower_block = 0;
  double upper_block = 0;
  std::size_t lower_rows = 0, lower_cols = 0;
  std::size_t upper_rows = 0, upper_cols = 0;
};

/// ρ_{α,q,N}(f). The two corner blocks are assembled in full: columns outside
/// the shells (N−ℓ, N] and (N, N+ℓ] cannot reach the opposite corner.
template <class Scalar>
RhoResult rho(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
              const JolissaintParams& params, const PowerIterationOptions& opts = {});

struct NuResult {
  double nu = 0;
  long argmax_N = 1;
  long N_max = 1;
  std::vector<RhoResult> profile;
};

/// ν_{α,q}(f) = max of ρ over N in [1, N_max]; ties go to the smaller N.
template <class Scalar>
NuResult nu(const BasicHeckeElement<Scalar>& f, const LengthFunction& length, const Rational& alpha,
            int q, const PowerIterationOptions& opts = {});

struct SubmultiplicativityReport {
  double nu_product = 0;
  double nu_half_f1 = 0;
  double nu_half_f2 = 0;
  double norm_f1 = 0;
  double norm_f2 = 0;
  double lhs = 0;
  double rhs = 0;
  bool passed = false;
};

/// ν_{α,q}(f1∗f2) <= ν_{α/2,q}(f1)‖f2‖ + ν_{α/2,q}(f2)‖f1‖ with Schur upper
/// bounds for the operator norms (relative slack 1e-12 for rounding).
template <class Scalar>
SubmultiplicativityReport submultiplicativity_check(const BasicHeckeElement<Scalar>& f1,
                                                    const BasicHeckeElement<Scalar>& f2,
                                                    const LengthFunction& length,
                                                    const Rational& alpha, int q);

template <class Scalar>
struct SobolevTail {
  /// (k, ‖(1−P_k) f‖²) for k = 1 .. ⌈ℓ⌉; all later terms vanish.
  std::vector<std::pair<long, typename ScalarTraits<Scalar>::Real>> tails;
  /// (s, ‖f‖_{s,L}).
  std::vector<std::pair<double, double>> norms;
};

template <class Scalar>
SobolevTail<Scalar> sobolev_tail_profile(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                                         const std::vector<double>& s_list);

/// i·(d_L(f∗ξ) − f∗d_L(ξ)) with d_L multiplication by the length. Exact mode
/// needs an integral length.
template <class Scalar>
BasicL2Vector<Scalar> derivation_apply(const BasicHeckeElement<Scalar>& f, const BasicL2Vector<Scalar>& xi,
                                       const LengthFunction& length);

/// d_L(ξ)(Hg) = L(g)ξ(Hg).
template <class Scalar>
BasicL2Vector<Scalar> length_multiply(const BasicL2Vector<Scalar>& xi, const LengthFunction& length);

}  // namespace hecke
