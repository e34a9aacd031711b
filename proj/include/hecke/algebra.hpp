#pragma once

#include <complex>
#include <map>
#include <type_traits>
#include <vector>

#include "hecke/coset.hpp"
#include "hecke/exact.hpp"
#include "hecke/length.hpp"
#include "hecke/pair.hpp"

namespace hecke {

/// Finitely supported function on G//H. Keys are canonical, zero coefficients
/// are never stored.
template <class Scalar>
class BasicHeckeElement {
 public:
  using scalar_type = Scalar;
  using Real = typename ScalarTraits<Scalar>::Real;
  using Terms = std::map<DoubleCosetKey, Scalar>;

  BasicHeckeElement() = default;
  explicit BasicHeckeElement(PairPtr pair) : pair_(std::move(pair)) {}

  /// Characteristic function of HgH scaled by c.
  static BasicHeckeElement delta(PairPtr pair, const GroupElement& g, Scalar c = Scalar(1));
  /// The unit δ_H.
  static BasicHeckeElement unit(PairPtr pair);

  const PairPtr& pair() const { return pair_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient at a canonical key (see HeckePair::double_coset).
  Scalar at(const DoubleCosetKey& key) const;
  /// f(HgH).
  Scalar operator()(const GroupElement& g) const;

  /// Adds c at the double coset of g.
  void add(const GroupElement& g, const Scalar& c);
  /// Adds c at an already canonical key.
  void add(const DoubleCosetKey& key, const Scalar& c);

  BasicHeckeElement& operator+=(const BasicHeckeElement& o);
  BasicHeckeElement& operator-=(const BasicHeckeElement& o);
  BasicHeckeElement& operator*=(const Scalar& c);
  friend BasicHeckeElement operator+(BasicHeckeElement a, const BasicHeckeElement& b) { return a += b; }
  friend BasicHeckeElement operator-(BasicHeckeElement a, const BasicHeckeElement& b) { return a -= b; }
  friend BasicHeckeElement operator*(const Scalar& c, BasicHeckeElement a) { return a *= c; }
  friend bool operator==(const BasicHeckeElement& a, const BasicHeckeElement& b) {
    return a.pair_ == b.pair_ && a.terms_ == b.terms_;
  }

 private:
  PairPtr pair_;
  Terms terms_;
};

/// Finitely supported vector in ℓ²(H\G).
template <class Scalar>
class BasicL2Vector {
 public:
  using scalar_type = Scalar;
  using Real = typename ScalarTraits<Scalar>::Real;
  using Terms = std::map<CosetKey, Scalar>;

  BasicL2Vector() = default;
  explicit BasicL2Vector(PairPtr pair) : pair_(std::move(pair)) {}

  /// Characteristic function δ_{Hg} of the right coset Hg.
  static BasicL2Vector delta(PairPtr pair, const GroupElement& g, Scalar c = Scalar(1));

  const PairPtr& pair() const { return pair_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar at(const CosetKey& key) const;
  Scalar operator()(const GroupElement& g) const;

  void add(const GroupElement& g, const Scalar& c);
  void add(const CosetKey& key, const Scalar& c);

  BasicL2Vector& operator+=(const BasicL2Vector& o);
  BasicL2Vector& operator-=(const BasicL2Vector& o);
  BasicL2Vector& operator*=(const Scalar& c);
  friend BasicL2Vector operator+(BasicL2Vector a, const BasicL2Vector& b) { return a += b; }
  friend BasicL2Vector operator-(BasicL2Vector a, const BasicL2Vector& b) { return a -= b; }
  friend BasicL2Vector operator*(const Scalar& c, BasicL2Vector a) { return a *= c; }
  friend bool operator==(const BasicL2Vector& a, const BasicL2Vector& b) {
    return a.pair_ == b.pair_ && a.terms_ == b.terms_;
  }

 private:
  PairPtr pair_;
  Terms terms_;
};

using HeckeElement = BasicHeckeElement<ExactComplex>;
using FloatHeckeElement = BasicHeckeElement<std::complex<double>>;
using L2Vector = BasicL2Vector<ExactComplex>;
using FloatL2Vector = BasicL2Vector<std::complex<double>>;

/// Convolution product. In exact mode the result is audited to be constant on
/// every double coset (AuditFailure otherwise). Throws std::invalid_argument
/// when the operands live on different pairs.
template <class Scalar>
BasicHeckeElement<Scalar> convolve(const BasicHeckeElement<Scalar>& f1,
                                   const BasicHeckeElement<Scalar>& f2);

/// f*(HgH) = conj f(Hg⁻¹H).
template <class Scalar>
BasicHeckeElement<Scalar> involution(const BasicHeckeElement<Scalar>& f);

/// λ(f)ξ = f ∗ ξ.
template <class Scalar>
BasicL2Vector<Scalar> apply_regular_rep(const BasicHeckeElement<Scalar>& f,
                                        const BasicL2Vector<Scalar>& xi);

/// f viewed as a function on H\G (constant on the right cosets of each double coset).
template <class Scalar>
BasicL2Vector<Scalar> as_right_function(const BasicHeckeElement<Scalar>& f);

/// ⟨ξ, η⟩ = Σ ξ(x) conj η(x).
template <class Scalar>
Scalar inner(const BasicL2Vector<Scalar>& xi, const BasicL2Vector<Scalar>& eta);

template <class Scalar>
typename ScalarTraits<Scalar>::Real l2_squared(const BasicL2Vector<Scalar>& xi);

/// Σ_{H\G} |f|², i.e. Σ_D deg(D)|f(D)|².
template <class Scalar>
typename ScalarTraits<Scalar>::Real l2_squared(const BasicHeckeElement<Scalar>& f);

/// ‖f‖²_{s,L} = Σ_D deg(D)|f(D)|²(1+L(D))^{2s}. Exact in exact mode; requires
/// an integral length there (Unsupported otherwise).
template <class Scalar>
typename ScalarTraits<Scalar>::Real sobolev_squared(const BasicHeckeElement<Scalar>& f,
                                                    const LengthFunction& length, int s);

/// ‖f‖′²_{s,L} = Σ_D |f(D)|²(1+L(D))^{2s}.
template <class Scalar>
typename ScalarTraits<Scalar>::Real sobolev_prime_squared(const BasicHeckeElement<Scalar>& f,
                                                          const LengthFunction& length, int s);

/// ⟨f1, f2⟩_{s,L} = Σ_D deg(D) f1(D) conj f2(D) (1+L(D))^{2s}.
template <class Scalar>
Scalar sobolev_inner(const BasicHeckeElement<Scalar>& f1, const BasicHeckeElement<Scalar>& f2,
                     const LengthFunction& length, int s);

struct NormSet {
  double l1_right = 0;
  double l2_right = 0;
  double sobolev = 0;
  double sobolev_prime = 0;
};

/// All norms in floating point, for real s.
template <class Scalar>
NormSet norms(const BasicHeckeElement<Scalar>& f, const LengthFunction& length, double s);

/// Σ_D deg(D)|f(D)|.
template <class Scalar>
double l1_right(const BasicHeckeElement<Scalar>& f);

/// Largest length on the support (0 for the zero element).
template <class Scalar>
double max_support_length(const BasicHeckeElement<Scalar>& f, const LengthFunction& length);

FloatHeckeElement to_float(const HeckeElement& f);
FloatL2Vector to_float(const L2Vector& xi);

}  // namespace hecke
