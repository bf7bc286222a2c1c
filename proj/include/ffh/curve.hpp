#pragma once

// Weierstrass models  Y^2 Z = X^3 + A X Z^2 + B Z^3  over Q(T1, ..., Tn).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffh/gcd.hpp"

namespace ffh {

/// Degree-zero rational function num / den on a projective space: both forms
/// homogeneous of the same degree, den nonzero.
struct FormFraction {
  MultiPoly num;
  MultiPoly den;

  static FormFraction polynomial_on_chart(const MultiPoly& affine) {
    const int d = std::max(affine.total_degree(), 0);
    const VarSpace s = VarSpace::homogeneous(affine.space().count);
    return {affine.is_zero() ? MultiPoly(s) : homogenize(affine, d), MultiPoly::variable(s, 0, d)};
  }

  bool is_zero() const { return num.is_zero(); }

  /// Value at a point of projective space; throws when den vanishes there.
  Rational evaluate(std::span<const Rational> point) const {
    const Rational d = den.evaluate(point);
    if (d == 0) throw ValidationError("rational function has a pole at the evaluation point");
    return num.evaluate(point) / d;
  }
};

/// Weierstrass model over the function field of the projective space whose
/// homogeneous coordinates are the variables of `space`.
struct WeierstrassModel {
  VarSpace space;
  FormFraction a;
  FormFraction b;

  /// -16(4A^3 + 27B^2) = -16(4 a^3 beta^2 + 27 b^2 alpha^3) / (alpha^3 beta^2).
  FormFraction discriminant() const {
    const MultiPoly a2 = a.den * a.den, b2 = b.den * b.den;
    const MultiPoly alpha3 = a2 * a.den;
    MultiPoly num = (a.num.pow(3) * b2 * Rational(4) + b.num.pow(2) * alpha3 * Rational(27)) * Rational(-16);
    return {std::move(num), alpha3 * b2};
  }

  /// Degree of the discriminant written in lowest terms num/den. For the model
  /// of a curve over K this is the total degree of the T-polynomial.
  int discriminant_degree() const {
    const FormFraction d = discriminant();
    if (d.num.is_zero()) throw SingularCurve("discriminant vanishes identically");
    return d.num.total_degree() - poly_gcd(d.num, d.den).total_degree();
  }
};

// ---------------------------------------------------------------------------

/// -16(4A^3 + 27B^2), expanded. Throws SingularCurve when it vanishes identically.
inline MultiPoly discriminant(const MultiPoly& A, const MultiPoly& B) {
  MultiPoly::same_space(A, B);
  MultiPoly d = (A.pow(3) * Rational(4) + B.pow(2) * Rational(27)) * Rational(-16);
  if (d.is_zero()) throw SingularCurve("discriminant vanishes identically: " + format_poly(A) + ", " + format_poly(B));
  return d;
}

/// Radicals used to certify minimality: no squarefree polynomial p has
/// p^4 | A and p^6 | B exactly when gcd(radical_a4, radical_b6) = 1.
struct MinimalityCertificate {
  MultiPoly radical_a4;  ///< product of squarefree factors of A with multiplicity >= 4
  MultiPoly radical_b6;  ///< product of squarefree factors of B with multiplicity >= 6
  bool a_is_zero = false;
  bool b_is_zero = false;
};

class FunctionFieldCurve {
 public:
  FunctionFieldCurve(MultiPoly A, MultiPoly B, std::optional<MinimalityCertificate> cert = std::nullopt)
      : A_(std::move(A)), B_(std::move(B)), certificate_(std::move(cert)) {
    MultiPoly::same_space(A_, B_);
    if (A_.space().kind != VarKind::affine) throw ValidationError("curve coefficients must be polynomials in T1..Tn");
    if (A_.space().count < 2) throw ValidationError("the base must be P^n with n >= 2");
    if (A_.space().count + 1 > kMaxVars) throw ValidationError("too many variables");
    discriminant_ = ffh::discriminant(A_, B_);
  }

  int n() const { return A_.space().count; }
  VarSpace affine_space() const { return A_.space(); }
  VarSpace homogeneous_space() const { return VarSpace::homogeneous(n()); }
  const MultiPoly& A() const { return A_; }
  const MultiPoly& B() const { return B_; }
  const MultiPoly& discriminant() const { return discriminant_; }
  const std::optional<MinimalityCertificate>& minimality_certificate() const { return certificate_; }

  /// Degree of A, with deg 0 = 0 (used for the infinity chart exponent).
  int degree_A() const { return std::max(A_.total_degree(), 0); }
  int degree_B() const { return std::max(B_.total_degree(), 0); }

  /// The model over K in homogeneous coordinates S0..Sn: A = Ahom / S0^deg A.
  WeierstrassModel model() const {
    return {homogeneous_space(), FormFraction::polynomial_on_chart(A_), FormFraction::polynomial_on_chart(B_)};
  }

 private:
  MultiPoly A_;
  MultiPoly B_;
  MultiPoly discriminant_;
  std::optional<MinimalityCertificate> certificate_;
};

inline MinimalityCertificate minimality_radicals(const MultiPoly& A, const MultiPoly& B) {
  MinimalityCertificate c;
  const VarSpace s = A.space();
  c.a_is_zero = A.is_zero();
  c.b_is_zero = B.is_zero();
  c.radical_a4 = c.a_is_zero ? MultiPoly(s) : squarefree_decompose(A).radical_of_multiplicity_at_least(s, 4);
  c.radical_b6 = c.b_is_zero ? MultiPoly(s) : squarefree_decompose(B).radical_of_multiplicity_at_least(s, 6);
  return c;
}

/// Common squarefree part of the two radicals. A zero coefficient has infinite
/// order everywhere, so its radical is treated as "everything".
inline MultiPoly minimality_obstruction(const MinimalityCertificate& c) {
  if (c.a_is_zero) return primitive_part(c.radical_b6);
  if (c.b_is_zero) return primitive_part(c.radical_a4);
  return poly_gcd(c.radical_a4, c.radical_b6);
}

struct MinimalityReduction {
  FunctionFieldCurve curve;
  MultiPoly u;  ///< A_out = A / u^4, B_out = B / u^6
};

/// Removes every p with p^4 | A and p^6 | B, iterating to a fixpoint. H_inf is never touched.
inline MinimalityReduction minimality_reduce(const FunctionFieldCurve& curve) {
  const VarSpace s = curve.affine_space();
  MultiPoly A = curve.A(), B = curve.B(), u = MultiPoly::constant(s, 1);
  for (;;) {
    MinimalityCertificate cert = minimality_radicals(A, B);
    const MultiPoly g = minimality_obstruction(cert);
    if (g.is_constant()) return {FunctionFieldCurve(A, B, std::move(cert)), u};
    u *= g;
    if (!A.is_zero()) A = divide_or_throw(A, g.pow(4), "minimality A");
    if (!B.is_zero()) B = divide_or_throw(B, g.pow(6), "minimality B");
  }
}

inline bool is_minimal(const FunctionFieldCurve& curve) {
  const auto& cert = curve.minimality_certificate();
  if (cert) return minimality_obstruction(*cert).is_constant();
  return minimality_obstruction(minimality_radicals(curve.A(), curve.B())).is_constant();
}

// ---------------------------------------------------------------------------
// Infinity chart

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// E' : Y^2 Z = X^3 + (S0/S1)^{4k} A X Z^2 + (S0/S1)^{6k} B Z^3, isomorphic to E
/// via P -> [(S0/S1)^{2k} x : (S0/S1)^{3k} y : z]. A' is kept as the pair
/// (A, S1-power 4k), B' as (B, 6k).
struct InfinityModel {
  int k = 0;
  FunctionFieldCurve base;
  MultiPoly a_numerator;  ///< = A
  int a_s1_power = 0;     ///< = 4k
  MultiPoly b_numerator;  ///< = B
  int b_s1_power = 0;     ///< = 6k

  /// Model over K in S-coordinates: A' = Ahom * S0^{4k - deg A} / S1^{4k}.
  WeierstrassModel model() const {
    const VarSpace s = base.homogeneous_space();
    auto chart = [&](const MultiPoly& f, int deg, int power) -> FormFraction {
      MultiPoly num = f.is_zero() ? MultiPoly(s) : shift_variable(homogenize(f, deg), 0, static_cast<std::uint32_t>(power - deg));
      return {std::move(num), MultiPoly::variable(s, 1, static_cast<std::uint32_t>(power))};
    };
    return {s, chart(a_numerator, base.degree_A(), a_s1_power), chart(b_numerator, base.degree_B(), b_s1_power)};
  }
};

/// k = max(ceil(deg A / 4), ceil(deg B / 6)) with total degrees.
inline InfinityModel infinity_model(const FunctionFieldCurve& curve) {
  const int k = std::max(ceil_div(curve.degree_A(), 4), ceil_div(curve.degree_B(), 6));
  return {k, curve, curve.A(), 4 * k, curve.B(), 6 * k};
}

// ---------------------------------------------------------------------------
// User-supplied factorizations

struct DivisorFactor {
  MultiPoly factor;
  int multiplicity = 0;
};

struct ValidatedDivisors {
  std::vector<DivisorFactor> factors;
  Rational unit;
};

/// Accepts `factors` iff target = unit * prod factor^m with every m >= 1.
/// Throws ValidationError naming the residual quotient otherwise.
inline ValidatedDivisors validate_factorization(const MultiPoly& target, std::span<const MultiPoly> factors) {
  if (target.is_zero()) throw ValidationError("cannot validate a factorization of zero");
  ValidatedDivisors out;
  MultiPoly residual = target;
  for (const auto& f : factors) {
    MultiPoly::same_space(f, target);
    if (f.is_constant()) throw ValidationError("divisor factor must be non-constant: " + format_poly(f));
    MultiPoly p = primitive_part(f);
    int m = 0;
    while (auto q = divide_exact(residual, p)) {
      residual = std::move(*q);
      ++m;
    }
    if (m == 0)
      throw ValidationError("factor " + format_poly(p) + " does not divide the remaining quotient " + format_poly(residual));
    out.factors.push_back({std::move(p), m});
  }
  if (!residual.is_constant())
    throw ValidationError("factorization rejected: residual quotient " + format_poly(residual));
  out.unit = residual.constant_value();
  return out;
}

/// Validates a factor list of the discriminant (the components of the bad locus).
inline ValidatedDivisors validate_divisor_list(const FunctionFieldCurve& curve, std::span<const MultiPoly> factors) {
  return validate_factorization(curve.discriminant(), factors);
}

}  // namespace ffh
