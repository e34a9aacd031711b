#include "hecke/jolissaint.hpp"

#include <cmath>
#include <stdexcept>

#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"

namespace hecke {

namespace {

Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

void check_alpha(const Rational& alpha) {
  if (!(sgn(alpha) > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

unsigned long exponent(const Integer& z) {
  if (!z.fits_ulong_p()) throw std::invalid_argument("alpha has an unreasonably large numerator/denominator");
  return z.get_ui();
}

}  // namespace

void validate(const JolissaintParams& p) {
  check_alpha(p.alpha);
  if (p.q < 1) throw std::invalid_argument("q must be a positive integer");
  if (p.N < 1) throw std::invalid_argument("N must be a positive integer");
}

bool below_threshold(double length, long N, const Rational& alpha, bool integral) {
  if (integral) {
    const long m = N - std::lround(length);
    if (m < 0) return false;
    return ipow(Integer(m), exponent(alpha.get_den())) >= ipow(Integer(N), exponent(alpha.get_num()));
  }
  const long double t = static_cast<long double>(N) -
                        std::pow(static_cast<long double>(N), static_cast<long double>(to_double(alpha)));
  return static_cast<long double>(length) <= t;
}

long vanishing_threshold(double max_length, const Rational& alpha, bool integral) {
  check_alpha(alpha);
  if (max_length <= 0) return 1;
  if (integral) {
    const Integer target = ipow(Integer(std::lround(max_length)), exponent(alpha.get_den()));
    const unsigned long a = exponent(alpha.get_num());
    // N^a >= ℓ^b; start from the floating estimate and correct exactly.
    long N = std::max(1L, static_cast<long>(std::floor(std::pow(max_length, 1.0 / to_double(alpha)))) - 1);
    while (ipow(Integer(N), a) < target) ++N;
    while (N > 1 && ipow(Integer(N - 1), a) >= target) --N;
    return N;
  }
  return std::max(1L, static_cast<long>(std::ceil(std::pow(max_length, 1.0 / to_double(alpha)))));
}

template <class Scalar>
BasicL2Vector<Scalar> project(const BasicL2Vector<Scalar>& xi, const LengthFunction& length, double r) {
  BasicL2Vector<Scalar> out(xi.pair());
  for (const auto& [k, c] : xi.terms())
    if (length(k.rep) <= r) out.add(k, c);
  return out;
}

template <class Scalar>
BasicL2Vector<Scalar> project_threshold(const BasicL2Vector<Scalar>& xi, const LengthFunction& length,
                                        long N, const Rational& alpha) {
  BasicL2Vector<Scalar> out(xi.pair());
  for (const auto& [k, c] : xi.terms())
    if (below_threshold(length(k.rep), N, alpha, length.integral())) out.add(k, c);
  return out;
}

template <class Scalar>
RhoResult rho(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
              const JolissaintParams& params, const PowerIterationOptions& opts) {
  validate(params);
  const HeckePair& pair = *f.pair();
  const double ell = max_support_length(f, length);
  const long N = params.N;
  const bool integral = length.integral();
  auto below = [&](double l) { return below_threshold(l, N, params.alpha, integral); };

  RhoResult r;
  r.N = N;
  if (f.empty()) return r;

  // (1 − P_N) λ(f) P_{N−N^α}
  auto lower_cols = enumerate_right_shell(pair, length, static_cast<double>(N) - ell, static_cast<double>(N));
  std::erase_if(lower_cols, [&](const RightBallEntry& e) { return !below(e.length); });
  const OperatorBlock lower = assemble_block(f, length, std::move(lower_cols),
                                             [N](double l) { return l > static_cast<double>(N); });
  // P_{N−N^α} λ(f) (1 − P_N)
  auto upper_cols = enumerate_right_shell(pair, length, static_cast<double>(N), static_cast<double>(N) + ell);
  const OperatorBlock upper = assemble_block(f, length, std::move(upper_cols), below);

  r.lower_block = spectral_norm(lower.matrix, opts);
  r.upper_block = spectral_norm(upper.matrix, opts);
  r.lower_rows = lower.matrix.rows;
  r.lower_cols = lower.matrix.cols;
  r.upper_rows = upper.matrix.rows;
  r.upper_cols = upper.matrix.cols;
  r.rho = std::pow(static_cast<double>(N), params.q) * (r.lower_block + r.upper_block);
  return r;
}

template <class Scalar>
NuResult nu(const BasicHeckeElement<Scalar>& f, const LengthFunction& length, const Rational& alpha,
            int q, const PowerIterationOptions& opts) {
  NuResult out;
  out.N_max = vanishing_threshold(max_support_length(f, length), alpha, length.integral());
  out.profile.resize(static_cast<std::size_t>(out.N_max));
  parallel_for(out.profile.size(), [&](std::size_t i) {
    out.profile[i] = rho(f, length, JolissaintParams{alpha, q, static_cast<long>(i) + 1}, opts);
  });
  for (const auto& r : out.profile)
    if (r.rho > out.nu) {
      out.nu = r.rho;
      out.argmax_N = r.N;
    }
  return out;
}

template <class Scalar>
SubmultiplicativityReport submultiplicativity_check(const BasicHeckeElement<Scalar>& f1,
                                                    const BasicHeckeElement<Scalar>& f2,
                                                    const LengthFunction& length,
                                                    const Rational& alpha, int q) {
  SubmultiplicativityReport r;
  const Rational half = alpha / 2;
  r.nu_product = nu(convolve(f1, f2), length, alpha, q).nu;
  r.nu_half_f1 = nu(f1, length, half, q).nu;
  r.nu_half_f2 = nu(f2, length, half, q).nu;
  r.norm_f1 = norm_upper(f1);
  r.norm_f2 = norm_upper(f2);
  r.lhs = r.nu_product;
  r.rhs = r.nu_half_f1 * r.norm_f2 + r.nu_half_f2 * r.norm_f1;
  r.passed = r.lhs <= r.rhs * (1 + 1e-12) + 1e-300;
  return r;
}

template <class Scalar>
SobolevTail<Scalar> sobolev_tail_profile(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                                         const std::vector<double>& s_list) {
  SobolevTail<Scalar> out;
  const auto xi = as_right_function(f);
  const long kmax = static_cast<long>(std::ceil(max_support_length(f, length)));
  for (long k = 1; k <= kmax; ++k) {
    typename ScalarTraits<Scalar>::Real tail{0};
    for (const auto& [key, c] : xi.terms())
      if (length(key.rep) > static_cast<double>(k)) tail += ScalarTraits<Scalar>::norm(c);
    out.tails.emplace_back(k, tail);
  }
  for (const double s : s_list) out.norms.emplace_back(s, norms(f, length, s).sobolev);
  return out;
}

template <class Scalar>
BasicL2Vector<Scalar> length_multiply(const BasicL2Vector<Scalar>& xi, const LengthFunction& length) {
  BasicL2Vector<Scalar> out(xi.pair());
  for (const auto& [k, c] : xi.terms()) {
    const double l = length(k.rep);
    if constexpr (ScalarTraits<Scalar>::exact) {
      if (!length.integral())
        throw Unsupported("exact derivations need an integral length, got '" + length.name() + "'");
      out.add(k, ExactComplex(Rational(std::lround(l))) * c);
    } else {
      out.add(k, l * c);
    }
  }
  return out;
}

template <class Scalar>
BasicL2Vector<Scalar> derivation_apply(const BasicHeckeElement<Scalar>& f, const BasicL2Vector<Scalar>& xi,
                                       const LengthFunction& length) {
  auto commutator = length_multiply(apply_regular_rep(f, xi), length);
  commutator -= apply_regular_rep(f, length_multiply(xi, length));
  Scalar i_unit;
  if constexpr (ScalarTraits<Scalar>::exact) i_unit = ExactComplex(Rational(0), Rational(1));
  else i_unit = Scalar(0.0, 1.0);
  commutator *= i_unit;
  return commutator;
}

#define HECKE_INSTANTIATE(S)                                                                        \
  template BasicL2Vector<S> project(const BasicL2Vector<S>&, const LengthFunction&, double);        \
  template BasicL2Vector<S> project_threshold(const BasicL2Vector<S>&, const LengthFunction&, long, \
                                              const Rational&);                                     \
  template RhoResult rho(const BasicHeckeElement<S>&, const LengthFunction&, const JolissaintParams&, \
                         const PowerIterationOptions&);                                             \
  template NuResult nu(const BasicHeckeElement<S>&, const LengthFunction&, const Rational&, int,    \
                       const PowerIterationOptions&);                                               \
  template SubmultiplicativityReport submultiplicativity_check(                                     \
      const BasicHeckeElement<S>&, const BasicHeckeElement<S>&, const LengthFunction&, const Rational&, int); \
  template SobolevTail<S> sobolev_tail_profile(const BasicHeckeElement<S>&, const LengthFunction&,  \
                                               const std::vector<double>&);                         \
  template BasicL2Vector<S> length_multiply(const BasicL2Vector<S>&, const LengthFunction&);        \
  template BasicL2Vector<S> derivation_apply(const BasicHeckeElement<S>&, const BasicL2Vector<S>&,  \
                                             const LengthFunction&);

HECKE_INSTANTIATE(ExactComplex)
HECKE_INSTANTIATE(std::complex<double>)

#undef HECKE_INSTANTIATE

}  // namespace hecke
