#include "hecke/algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

template <class Scalar>
using Traits = ScalarTraits<Scalar>;

template <class Map, class Key, class Scalar>
void accumulate(Map& terms, const Key& key, const Scalar& c) {
  if (Traits<Scalar>::is_zero(c)) return;
  auto [it, inserted] = terms.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (Traits<Scalar>::is_zero(it->second)) terms.erase(it);
  }
}

void require_same_pair(const PairPtr& a, const PairPtr& b) {
  if (a != b) throw std::invalid_argument("operands belong to different Hecke pairs");
}

/// (1 + L)^{2s} for an integral length value.
Integer exact_weight(double length, int s) {
  Integer base = Integer(static_cast<long>(std::llround(length))) + 1;
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(2 * s));
  return out;
}

template <class Scalar>
typename Traits<Scalar>::Real weight(const LengthFunction& length, const GroupElement& rep, int s) {
  if (s < 0) throw std::invalid_argument("Sobolev order must be nonnegative");
  const double l = length(rep);
  if constexpr (Traits<Scalar>::exact) {
    if (!length.integral())
      throw Unsupported("exact Sobolev norms need an integral length, got '" + length.name() + "'");
    return Rational(exact_weight(l, s));
  } else {
    return std::pow(1.0 + l, 2.0 * s);
  }
}

}  // namespace

// ---------------------------------------------------------------- elements

template <class Scalar>
BasicHeckeElement<Scalar> BasicHeckeElement<Scalar>::delta(PairPtr pair, const GroupElement& g,
                                                           Scalar c) {
  BasicHeckeElement f(std::move(pair));
  f.add(g, c);
  return f;
}

template <class Scalar>
BasicHeckeElement<Scalar> BasicHeckeElement<Scalar>::unit(PairPtr pair) {
  const Backend b = pair->backend();
  return delta(std::move(pair), identity(b));
}

template <class Scalar>
Scalar BasicHeckeElement<Scalar>::at(const DoubleCosetKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar() : it->second;
}

template <class Scalar>
Scalar BasicHeckeElement<Scalar>::operator()(const GroupElement& g) const {
  return at(pair_->double_coset(g));
}

template <class Scalar>
void BasicHeckeElement<Scalar>::add(const GroupElement& g, const Scalar& c) {
  accumulate(terms_, pair_->double_coset(g), c);
}

template <class Scalar>
void BasicHeckeElement<Scalar>::add(const DoubleCosetKey& key, const Scalar& c) {
  accumulate(terms_, key, c);
}

template <class Scalar>
BasicHeckeElement<Scalar>& BasicHeckeElement<Scalar>::operator+=(const BasicHeckeElement& o) {
  if (!pair_) pair_ = o.pair_;
  require_same_pair(pair_, o.pair_);
  for (const auto& [k, c] : o.terms_) accumulate(terms_, k, c);
  return *this;
}

template <class Scalar>
BasicHeckeElement<Scalar>& BasicHeckeElement<Scalar>::operator-=(const BasicHeckeElement& o) {
  if (!pair_) pair_ = o.pair_;
  require_same_pair(pair_, o.pair_);
  for (const auto& [k, c] : o.terms_) accumulate(terms_, k, Scalar(-c));
  return *this;
}

template <class Scalar>
BasicHeckeElement<Scalar>& BasicHeckeElement<Scalar>::operator*=(const Scalar& c) {
  if (Traits<Scalar>::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

template <class Scalar>
BasicL2Vector<Scalar> BasicL2Vector<Scalar>::delta(PairPtr pair, const GroupElement& g, Scalar c) {
  BasicL2Vector v(std::move(pair));
  v.add(g, c);
  return v;
}

template <class Scalar>
Scalar BasicL2Vector<Scalar>::at(const CosetKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar() : it->second;
}

template <class Scalar>
Scalar BasicL2Vector<Scalar>::operator()(const GroupElement& g) const {
  return at(pair_->right_coset(g));
}

template <class Scalar>
void BasicL2Vector<Scalar>::add(const GroupElement& g, const Scalar& c) {
  accumulate(terms_, pair_->right_coset(g), c);
}

template <class Scalar>
void BasicL2Vector<Scalar>::add(const CosetKey& key, const Scalar& c) {
  accumulate(terms_, key, c);
}

template <class Scalar>
BasicL2Vector<Scalar>& BasicL2Vector<Scalar>::operator+=(const BasicL2Vector& o) {
  if (!pair_) pair_ = o.pair_;
  require_same_pair(pair_, o.pair_);
  for (const auto& [k, c] : o.terms_) accumulate(terms_, k, c);
  return *this;
}

template <class Scalar>
BasicL2Vector<Scalar>& BasicL2Vector<Scalar>::operator-=(const BasicL2Vector& o) {
  if (!pair_) pair_ = o.pair_;
  require_same_pair(pair_, o.pair_);
  for (const auto& [k, c] : o.terms_) accumulate(terms_, k, Scalar(-c));
  return *this;
}

template <class Scalar>
BasicL2Vector<Scalar>& BasicL2Vector<Scalar>::operator*=(const Scalar& c) {
  if (Traits<Scalar>::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

// ---------------------------------------------------------------- products

template <class Scalar>
BasicL2Vector<Scalar> apply_regular_rep(const BasicHeckeElement<Scalar>& f,
                                        const BasicL2Vector<Scalar>& xi) {
  require_same_pair(f.pair(), xi.pair());
  const HeckePair& pair = *f.pair();
  std::unordered_map<CosetKey, Scalar, CosetKeyHash> acc;
  for (const auto& [dkey, coeff] : f.terms()) {
    const auto cosets = cached_decomposition(pair, dkey);
    for (const auto& [zkey, zval] : xi.terms()) {
      const Scalar c = coeff * zval;
      for (const auto& x : *cosets) accumulate(acc, pair.right_coset(mul(x.rep, zkey.rep)), c);
    }
  }
  BasicL2Vector<Scalar> out(f.pair());
  for (auto& [k, c] : acc) out.add(k, c);
  return out;
}

template <class Scalar>
BasicL2Vector<Scalar> as_right_function(const BasicHeckeElement<Scalar>& f) {
  BasicL2Vector<Scalar> out(f.pair());
  for (const auto& [dkey, coeff] : f.terms())
    for (const auto& c : *cached_decomposition(*f.pair(), dkey)) out.add(c, coeff);
  return out;
}

template <class Scalar>
BasicHeckeElement<Scalar> convolve(const BasicHeckeElement<Scalar>& f1,
                                   const BasicHeckeElement<Scalar>& f2) {
  require_same_pair(f1.pair(), f2.pair());
  BasicHeckeElement<Scalar> out(f1.pair());
  if (f1.empty() || f2.empty()) return out;
  const HeckePair& pair = *f1.pair();
  const auto image = apply_regular_rep(f1, as_right_function(f2));

  std::map<DoubleCosetKey, Scalar> buckets;
  for (const auto& [ckey, value] : image.terms()) {
    DoubleCosetKey dkey = pair.double_coset(ckey.rep);
    if (buckets.contains(dkey)) continue;
    const auto cosets = cached_decomposition(pair, dkey);
    const Scalar reference = image.at(cosets->front());
    if constexpr (Traits<Scalar>::exact) {
      for (const auto& c : *cosets)
        if (!(image.at(c) == reference))
          throw AuditFailure("convolution is not constant on the double coset " +
                             dkey.rep.key_string() + " (right cosets " +
                             cosets->front().rep.key_string() + " and " + c.rep.key_string() + ")");
    }
    buckets.emplace(std::move(dkey), reference);
  }
  for (const auto& [k, c] : buckets) out.add(k, c);
  return out;
}

template <class Scalar>
BasicHeckeElement<Scalar> involution(const BasicHeckeElement<Scalar>& f) {
  BasicHeckeElement<Scalar> out(f.pair());
  for (const auto& [k, c] : f.terms()) out.add(inv(k.rep), Traits<Scalar>::conj(c));
  return out;
}

// ---------------------------------------------------------------- norms

template <class Scalar>
Scalar inner(const BasicL2Vector<Scalar>& xi, const BasicL2Vector<Scalar>& eta) {
  require_same_pair(xi.pair(), eta.pair());
  Scalar s{};
  const auto& small = xi.size() <= eta.size() ? xi : eta;
  for (const auto& [k, c] : small.terms()) {
    const Scalar a = xi.at(k);
    const Scalar b = eta.at(k);
    s += a * Traits<Scalar>::conj(b);
  }
  return s;
}

template <class Scalar>
typename ScalarTraits<Scalar>::Real l2_squared(const BasicL2Vector<Scalar>& xi) {
  typename Traits<Scalar>::Real s{0};
  for (const auto& [k, c] : xi.terms()) s += Traits<Scalar>::norm(c);
  return s;
}

template <class Scalar>
typename ScalarTraits<Scalar>::Real l2_squared(const BasicHeckeElement<Scalar>& f) {
  typename Traits<Scalar>::Real s{0};
  for (const auto& [k, c] : f.terms()) {
    const auto deg = static_cast<long>(cached_decomposition(*f.pair(), k)->size());
    s += typename Traits<Scalar>::Real(deg) * Traits<Scalar>::norm(c);
  }
  return s;
}

template <class Scalar>
typename ScalarTraits<Scalar>::Real sobolev_squared(const BasicHeckeElement<Scalar>& f,
                                                    const LengthFunction& length, int s) {
  typename Traits<Scalar>::Real out{0};
  for (const auto& [k, c] : f.terms()) {
    const auto deg = static_cast<long>(cached_decomposition(*f.pair(), k)->size());
    out += typename Traits<Scalar>::Real(deg) * Traits<Scalar>::norm(c) * weight<Scalar>(length, k.rep, s);
  }
  return out;
}

template <class Scalar>
typename ScalarTraits<Scalar>::Real sobolev_prime_squared(const BasicHeckeElement<Scalar>& f,
                                                          const LengthFunction& length, int s) {
  typename Traits<Scalar>::Real out{0};
  for (const auto& [k, c] : f.terms()) out += Traits<Scalar>::norm(c) * weight<Scalar>(length, k.rep, s);
  return out;
}

template <class Scalar>
Scalar sobolev_inner(const BasicHeckeElement<Scalar>& f1, const BasicHeckeElement<Scalar>& f2,
                     const LengthFunction& length, int s) {
  require_same_pair(f1.pair(), f2.pair());
  Scalar out{};
  for (const auto& [k, c] : f1.terms()) {
    const Scalar d = f2.at(k);
    if (Traits<Scalar>::is_zero(d)) continue;
    const auto deg = static_cast<long>(cached_decomposition(*f1.pair(), k)->size());
    const typename Traits<Scalar>::Real w = typename Traits<Scalar>::Real(deg) * weight<Scalar>(length, k.rep, s);
    out += Scalar(w) * c * Traits<Scalar>::conj(d);
  }
  return out;
}

template <class Scalar>
double l1_right(const BasicHeckeElement<Scalar>& f) {
  double s = 0;
  for (const auto& [k, c] : f.terms())
    s += static_cast<double>(cached_decomposition(*f.pair(), k)->size()) *
         std::abs(Traits<Scalar>::to_complex(c));
  return s;
}

template <class Scalar>
NormSet norms(const BasicHeckeElement<Scalar>& f, const LengthFunction& length, double s) {
  NormSet n;
  double l2 = 0, sob = 0, prime = 0;
  for (const auto& [k, c] : f.terms()) {
    const double deg = static_cast<double>(cached_decomposition(*f.pair(), k)->size());
    const double a2 = std::norm(Traits<Scalar>::to_complex(c));
    const double w = std::pow(1.0 + length(k.rep), 2.0 * s);
    n.l1_right += deg * std::sqrt(a2);
    l2 += deg * a2;
    sob += deg * a2 * w;
    prime += a2 * w;
  }
  n.l2_right = std::sqrt(l2);
  n.sobolev = std::sqrt(sob);
  n.sobolev_prime = std::sqrt(prime);
  return n;
}

template <class Scalar>
double max_support_length(const BasicHeckeElement<Scalar>& f, const LengthFunction& length) {
  double m = 0;
  for (const auto& [k, c] : f.terms()) m = std::max(m, length(k.rep));
  return m;
}

FloatHeckeElement to_float(const HeckeElement& f) {
  FloatHeckeElement out(f.pair());
  for (const auto& [k, c] : f.terms()) out.add(k, c.to_complex());
  return out;
}

FloatL2Vector to_float(const L2Vector& xi) {
  FloatL2Vector out(xi.pair());
  for (const auto& [k, c] : xi.terms()) out.add(k, c.to_complex());
  return out;
}

#define HECKE_INSTANTIATE(S)                                                                    \
  template class BasicHeckeElement<S>;                                                          \
  template class BasicL2Vector<S>;                                                              \
  template BasicHeckeElement<S> convolve(const BasicHeckeElement<S>&, const BasicHeckeElement<S>&); \
  template BasicHeckeElement<S> involution(const BasicHeckeElement<S>&);                        \
  template BasicL2Vector<S> apply_regular_rep(const BasicHeckeElement<S>&, const BasicL2Vector<S>&); \
  template BasicL2Vector<S> as_right_function(const BasicHeckeElement<S>&);                     \
  template S inner(const BasicL2Vector<S>&, const BasicL2Vector<S>&);                           \
  template ScalarTraits<S>::Real l2_squared(const BasicL2Vector<S>&);                           \
  template ScalarTraits<S>::Real l2_squared(const BasicHeckeElement<S>&);                       \
  template ScalarTraits<S>::Real sobolev_squared(const BasicHeckeElement<S>&, const LengthFunction&, int); \
  template ScalarTraits<S>::Real sobolev_prime_squared(const BasicHeckeElement<S>&, const LengthFunction&, int); \
  template S sobolev_inner(const BasicHeckeElement<S>&, const BasicHeckeElement<S>&, const LengthFunction&, int); \
  template double l1_right(const BasicHeckeElement<S>&);                                        \
  template NormSet norms(const BasicHeckeElement<S>&, const LengthFunction&, double);           \
  template double max_support_length(const BasicHeckeElement<S>&, const LengthFunction&);

HECKE_INSTANTIATE(ExactComplex)
HECKE_INSTANTIATE(std::complex<double>)

#undef HECKE_INSTANTIATE

}  // namespace hecke
