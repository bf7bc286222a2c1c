#pragma once

#include <random>

#include "ffh/parse.hpp"
#include "ffh/specialization.hpp"

namespace fx {

using namespace ffh;

inline const VarSpace T2 = VarSpace::affine(2);
inline const VarSpace S2 = VarSpace::homogeneous(2);
inline const VarSpace U2 = VarSpace::param(2);

inline MultiPoly t(const char* s) { return parse_poly(s, T2); }
inline MultiPoly s(const char* s) { return parse_poly(s, S2); }
inline MultiPoly u(const char* s) { return parse_poly(s, U2); }

/// y^2 = x^3 + T1 x + T2^4 - T2^3 - T1 T2 with P = (T2, T2^2).
inline FunctionFieldCurve fixture_curve() { return FunctionFieldCurve(t("T1"), t("T2^4 - T2^3 - T1*T2")); }
inline ProjPoint fixture_point() { return affine_point(t("T2"), t("T2^2")); }

/// y^2 = x^3 + T1^2 with the 3-torsion point (0, T1).
inline FunctionFieldCurve cusp_curve() { return FunctionFieldCurve(t("0"), t("T1^2")); }
inline ProjPoint cusp_point() { return affine_point(t("0"), t("T1")); }

/// Dense random polynomial with small integer coefficients.
inline MultiPoly random_poly(VarSpace space, int max_degree, std::mt19937_64& rng, int coef_bound = 5,
                             double density = 0.5) {
  std::uniform_int_distribution<int> coef(-coef_bound, coef_bound);
  std::uniform_real_distribution<double> keep(0, 1);
  std::vector<MultiPoly::Term> terms;
  const int nv = space.count;
  std::vector<std::uint32_t> e(nv, 0);
  for (;;) {
    int deg = 0;
    for (auto v : e) deg += static_cast<int>(v);
    if (deg <= max_degree && keep(rng) < density) {
      Monomial m;
      for (int i = 0; i < nv; ++i) m.exp[i] = e[i];
      m.degree = static_cast<std::uint32_t>(deg);
      int c = coef(rng);
      if (c != 0) terms.push_back({m, Rational(c)});
    }
    int i = 0;
    while (i < nv && e[i] == static_cast<std::uint32_t>(max_degree)) e[i++] = 0;
    if (i == nv) break;
    ++e[i];
  }
  return MultiPoly::from_terms(space, std::move(terms));
}

/// Random form of exactly `degree` (nonzero).
inline MultiPoly random_form(VarSpace space, int degree, std::mt19937_64& rng, int coef_bound = 5) {
  for (;;) {
    MultiPoly f = random_poly(space, degree, rng, coef_bound, 0.6);
    std::vector<MultiPoly::Term> top;
    for (const auto& tm : f.terms())
      if (static_cast<int>(tm.mono.degree) == degree) top.push_back(tm);
    if (!top.empty()) return MultiPoly::from_terms(space, std::move(top));
  }
}

/// Element of Q(T) as a reduced fraction num/den (den primitive-normalized).
struct Frac {
  MultiPoly num, den;

  static Frac of(const MultiPoly& p) { return {p, MultiPoly::constant(p.space(), 1)}; }
  Frac reduced() const {
    if (num.is_zero()) return {num, MultiPoly::constant(num.space(), 1)};
    MultiPoly g = poly_gcd(num, den);
    MultiPoly n = divide_or_throw(num, g, "frac"), d = divide_or_throw(den, g, "frac");
    const Rational lc = d.leading_coefficient();
    return {n * Rational(1 / lc), d * Rational(1 / lc)};
  }
  friend Frac operator+(const Frac& a, const Frac& b) { return Frac{a.num * b.den + b.num * a.den, a.den * b.den}.reduced(); }
  friend Frac operator-(const Frac& a, const Frac& b) { return Frac{a.num * b.den - b.num * a.den, a.den * b.den}.reduced(); }
  friend Frac operator*(const Frac& a, const Frac& b) { return Frac{a.num * b.num, a.den * b.den}.reduced(); }
  friend Frac operator/(const Frac& a, const Frac& b) { return Frac{a.num * b.den, a.den * b.num}.reduced(); }
  friend bool operator==(const Frac& a, const Frac& b) { return (a.num * b.den - b.num * a.den).is_zero(); }
};

/// Chord-tangent doubling of an affine point over Q(T), independent of the
/// projective formulas: returns (x3, y3).
inline std::pair<Frac, Frac> oracle_double(const MultiPoly& A, const Frac& x, const Frac& y) {
  const Frac three = Frac::of(MultiPoly::constant(A.space(), 3));
  const Frac two = Frac::of(MultiPoly::constant(A.space(), 2));
  const Frac lambda = (three * x * x + Frac::of(A)) / (two * y);
  const Frac x3 = lambda * lambda - two * x;
  const Frac y3 = lambda * (x - x3) - y;
  return {x3, y3};
}

inline std::pair<Frac, Frac> oracle_add(const Frac& x1, const Frac& y1, const Frac& x2, const Frac& y2) {
  const Frac lambda = (y2 - y1) / (x2 - x1);
  const Frac x3 = lambda * lambda - x1 - x2;
  return {x3, lambda * (x1 - x3) - y1};
}

/// Projective point from affine fractions x = xn/xd, y = yn/yd.
inline ProjPoint from_fracs(const Frac& x, const Frac& y) {
  // [x : y : 1] scaled by xd * yd
  return normalize_point(x.num * y.den, y.num * x.den, x.den * y.den);
}

/// Random curve with a known point: x(T), y(T) chosen, A random, B solved.
struct ConstructedPoint {
  FunctionFieldCurve curve;
  ProjPoint point;
};

inline ConstructedPoint random_point_on_curve(std::mt19937_64& rng) {
  for (;;) {
    MultiPoly x = random_poly(T2, 2, rng, 4, 0.6);
    MultiPoly y = random_poly(T2, 2, rng, 4, 0.6);
    MultiPoly A = random_poly(T2, 2, rng, 4, 0.6);
    if (y.is_zero()) continue;
    MultiPoly B = y * y - x * x * x - A * x;
    try {
      FunctionFieldCurve c(A, B);
      return {c, affine_point(x, y)};
    } catch (const SingularCurve&) {
    }
  }
}

}  // namespace fx
