#pragma once

// Weil heights, canonical heights by the doubling limit, the height pairing
// and regulator intervals.
//
// The Weil height of a normalized point is the common degree of its
// coordinates. The canonical height is estimated from
//   v_m = h([2^m]P) / (3 * 4^m),   |h^ - v_m| <= C / (9 * 4^m)
// where C bounds |h([2]Q) - 4 h(Q)| along the doubling orbit.

#include <climits>
#include <optional>
#include <vector>

#include "ffh/point.hpp"

namespace ffh {

inline long weil_height(const ProjPoint& P) { return P.degree(); }

// ---------------------------------------------------------------------------
// Divisor-sum definition

/// Element num/den of K = Q(T1..Tn).
struct KElement {
  MultiPoly num;
  MultiPoly den;
};

/// Affine coordinates of a point of P^2(K): [x/1 : y/1 : z/1] on the chart S0 = 1.
inline std::vector<KElement> coordinates_of(const ProjPoint& P) {
  const VarSpace t = VarSpace::affine(P.space().dimension());
  std::vector<KElement> out;
  for (const MultiPoly* f : {&P.x(), &P.y(), &P.z()})
    out.push_back({f->is_zero() ? MultiPoly(t) : dehomogenize(*f), MultiPoly::constant(t, 1)});
  return out;
}

namespace detail {
inline int strip_factor(MultiPoly& f, const MultiPoly& g) {
  int m = 0;
  while (auto q = divide_exact(f, g)) {
    f = std::move(*q);
    ++m;
  }
  return m;
}
}  // namespace detail

/// sum over prime divisors G of max_i { -ord_G(f_i) } * deg G.
///
/// `primes` are forms in S0..Sn; S0 stands for the hyperplane at infinity,
/// where ord of a polynomial of degree d is -d. Every irreducible factor of
/// every numerator and denominator must be listed.
inline long weil_height_divisor_sum(std::span<const KElement> coords, std::span<const MultiPoly> primes) {
  if (coords.empty()) throw ValidationError("no coordinates");
  const VarSpace t = coords[0].num.space();
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    MultiPoly::same_space(coords[i].num, coords[0].num);
    MultiPoly::same_space(coords[i].den, coords[0].num);
    if (coords[i].den.is_zero()) throw ValidationError("coordinate with zero denominator");
    if (!coords[i].num.is_zero()) live.push_back(i);
  }
  if (live.empty()) throw ValidationError("all coordinates are zero");

  std::vector<MultiPoly> nums, dens;
  for (auto i : live) {
    nums.push_back(coords[i].num);
    dens.push_back(coords[i].den);
  }

  auto infinity_term = [&] {
    long worst = LONG_MIN;
    for (auto i : live) worst = std::max<long>(worst, coords[i].num.total_degree() - coords[i].den.total_degree());
    return worst;
  };
  const MultiPoly s0 = MultiPoly::variable(VarSpace::homogeneous(t.count), 0);
  long total = 0;
  bool infinity_listed = false;
  for (const auto& G : primes) {
    if (G.space() != s0.space() || !G.is_homogeneous() || G.total_degree() < 1)
      throw ValidationError("prime divisor must be a non-constant form in S0..Sn: " + format_poly(G));
    if (primitive_part(G) == s0) {
      infinity_listed = true;
      total += infinity_term();
      continue;
    }
    if (divides(s0, G)) throw ValidationError("prime divisor is divisible by S0: " + format_poly(G));
    const MultiPoly g = primitive_part(dehomogenize(G));
    long worst = LONG_MIN;
    for (std::size_t j = 0; j < nums.size(); ++j) {
      const long ord = detail::strip_factor(nums[j], g) - detail::strip_factor(dens[j], g);
      worst = std::max(worst, -ord);
    }
    total += worst * G.total_degree();
  }
  for (std::size_t j = 0; j < nums.size(); ++j)
    if (!nums[j].is_constant() || !dens[j].is_constant())
      throw ValidationError("factor list does not cover the coordinates: residual " + format_poly(nums[j]) + " / " +
                            format_poly(dens[j]));
  if (!infinity_listed && infinity_term() != 0)
    throw ValidationError("factor list does not cover the hyperplane at infinity (S0)");
  return total;
}

// ---------------------------------------------------------------------------
// Canonical height

struct HeightEstimate {
  int level = 0;
  Rational value;        ///< h([2^level]P) / (3 * 4^level)
  Rational error_bound;  ///< constant_C / (9 * 4^level), or 0 when exact
  Rational constant_C;   ///< constant used for error_bound
  Rational a_priori_C;   ///< 2 deg(Delta)
  std::optional<Rational> observed_C;  ///< max observed quadrupling defect
  std::vector<long> heights;           ///< h([2^m]P) for m = 0..level
  bool exact = false;                  ///< orbit reached O or cycled: the value is exactly 0
  bool converged = true;               ///< error_bound <= requested target

  Rational lower() const { return value - error_bound; }
  Rational upper() const { return value + error_bound; }
  /// Interval for level m <= level, using the final constant.
  std::pair<Rational, Rational> interval_at(int m) const;
};

inline Rational pow4(int m) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 4, static_cast<unsigned long>(m));
  return Rational(p);
}

inline std::pair<Rational, Rational> HeightEstimate::interval_at(int m) const {
  if (exact) return {Rational(0), Rational(0)};
  Rational v(heights.at(m), 1);
  v /= 3 * pow4(m);
  Rational e = constant_C / (9 * pow4(m));
  return {v - e, v + e};
}

struct CanonicalHeightOptions {
  int min_level = 1;
  int max_level = 6;
  int degree_ceiling = 2000;
};

/// Doubling orbit P, [2]P, ..., [2^levels]P, or shorter if it reaches O.
inline std::vector<ProjPoint> doubling_orbit(const WeierstrassModel& E, const ProjPoint& P, int levels,
                                             int degree_ceiling) {
  detail::require_on_curve(E, P, "doubling_orbit");
  std::vector<ProjPoint> orbit{P};
  int max_coef_degree = 0;
  for (const FormFraction* f : {&E.a, &E.b})
    max_coef_degree = std::max({max_coef_degree, f->num.total_degree(), f->den.total_degree()});
  for (int m = 1; m <= levels && !orbit.back().is_infinity(); ++m) {
    // the common factor removed after doubling has degree at most 6 * max_coef_degree
    const int least = 4 * orbit.back().degree() - 6 * max_coef_degree;
    if (degree_ceiling > 0 && least > degree_ceiling)
      throw DegreeCeilingExceeded("doubling would exceed the degree ceiling at level " + std::to_string(m), m,
                                  least);
    orbit.push_back(double_point_fast(E, orbit.back()));
    if (degree_ceiling > 0 && orbit.back().degree() > degree_ceiling)
      throw DegreeCeilingExceeded("degree " + std::to_string(orbit.back().degree()) + " exceeds the ceiling at level " +
                                      std::to_string(m),
                                  m, orbit.back().degree());
  }
  return orbit;
}

/// True when the last point of a doubling orbit is O or repeats an earlier
/// point up to sign, which forces P to be torsion.
inline bool orbit_is_periodic(const std::vector<ProjPoint>& orbit) {
  const ProjPoint& q = orbit.back();
  if (q.is_infinity()) return true;
  const ProjPoint nq = negate(q);
  for (std::size_t i = 0; i + 1 < orbit.size(); ++i)
    if (orbit[i].degree() == q.degree() && (orbit[i] == q || orbit[i] == nq)) return true;
  return false;
}

/// Builds the estimate from exact heights h([2^m]P), m = 0..M.
inline HeightEstimate estimate_from_heights(std::vector<long> heights, bool reached_infinity, const Rational& a_priori_C) {
  HeightEstimate est;
  est.a_priori_C = a_priori_C;
  est.heights = std::move(heights);
  est.level = static_cast<int>(est.heights.size()) - 1;
  if (reached_infinity) {
    est.exact = true;
    est.value = 0;
    est.error_bound = 0;
    est.constant_C = a_priori_C;
    return est;
  }
  if (est.heights.size() >= 2) {
    Rational worst(0);
    for (std::size_t m = 0; m + 1 < est.heights.size(); ++m) {
      Rational d(est.heights[m + 1] - 4 * est.heights[m]);
      worst = std::max(worst, Rational(abs(d)));
    }
    est.observed_C = worst;
  }
  est.constant_C = est.observed_C ? *est.observed_C : a_priori_C;
  est.value = Rational(est.heights.back()) / (3 * pow4(est.level));
  est.error_bound = est.constant_C / (9 * pow4(est.level));
  return est;
}

/// Estimate of the canonical height with error_bound <= target_error when
/// reachable within opt.max_level (converged = false otherwise).
///
/// The reported error uses the largest quadrupling defect observed along the
/// orbit once two levels exist; the a-priori constant 2 deg(Delta) is
/// reported alongside.
inline HeightEstimate canonical_height(const WeierstrassModel& E, const ProjPoint& P, const Rational& target_error,
                                       CanonicalHeightOptions opt = {}) {
  if (target_error <= 0) throw ValidationError("target error must be positive");
  detail::require_on_curve(E, P, "canonical_height");
  const Rational a_priori(2 * E.discriminant_degree());
  std::vector<ProjPoint> orbit{P};
  std::vector<long> heights{weil_height(P)};
  if (P.is_infinity()) return estimate_from_heights(heights, true, a_priori);
  for (int m = 1; m <= opt.max_level; ++m) {
    orbit.push_back(doubling_orbit(E, orbit.back(), 1, opt.degree_ceiling).back());
    heights.push_back(weil_height(orbit.back()));
    if (orbit_is_periodic(orbit)) return estimate_from_heights(heights, true, a_priori);
    HeightEstimate est = estimate_from_heights(heights, false, a_priori);
    if (m >= opt.min_level && est.error_bound <= target_error) return est;
  }
  HeightEstimate est = estimate_from_heights(heights, false, a_priori);
  est.converged = est.error_bound <= target_error;
  return est;
}

// ---------------------------------------------------------------------------
// Intervals

struct PairingInterval {
  Rational midpoint;
  Rational radius;

  Rational lower() const { return midpoint - radius; }
  Rational upper() const { return midpoint + radius; }
  bool contains(const Rational& v) const { return lower() <= v && v <= upper(); }
  bool excludes_zero() const { return !contains(Rational(0)); }

  friend PairingInterval operator+(const PairingInterval& a, const PairingInterval& b) {
    return {a.midpoint + b.midpoint, a.radius + b.radius};
  }
  friend PairingInterval operator-(const PairingInterval& a, const PairingInterval& b) {
    return {a.midpoint - b.midpoint, a.radius + b.radius};
  }
  friend PairingInterval operator*(const PairingInterval& a, const PairingInterval& b) {
    return {a.midpoint * b.midpoint,
            abs(a.midpoint) * b.radius + abs(b.midpoint) * a.radius + a.radius * b.radius};
  }
  friend PairingInterval operator*(const Rational& c, const PairingInterval& a) {
    return {c * a.midpoint, abs(c) * a.radius};
  }
};

inline PairingInterval to_interval(const HeightEstimate& h) { return {h.value, h.error_bound}; }

inline bool intervals_overlap(const PairingInterval& a, const PairingInterval& b) {
  return a.lower() <= b.upper() && b.lower() <= a.upper();
}

/// <P, Q> = (h^(P+Q) - h^(P) - h^(Q)) / 2, with radius <= 3 target / 2.
inline PairingInterval height_pairing(const WeierstrassModel& E, const ProjPoint& P, const ProjPoint& Q,
                                      const Rational& target_error, CanonicalHeightOptions opt = {}) {
  const ProjPoint S = add(E, P, Q);
  const PairingInterval hs = to_interval(canonical_height(E, S, target_error, opt));
  const PairingInterval hp = to_interval(canonical_height(E, P, target_error, opt));
  const PairingInterval hq = to_interval(canonical_height(E, Q, target_error, opt));
  return Rational(1, 2) * (hs - hp - hq);
}

inline PairingInterval interval_determinant(std::vector<std::vector<PairingInterval>> m) {
  const std::size_t r = m.size();
  if (r == 0) return {Rational(1), Rational(0)};
  if (r == 1) return m[0][0];
  PairingInterval det{Rational(0), Rational(0)};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::vector<PairingInterval>> minor;
    for (std::size_t i = 1; i < r; ++i) {
      std::vector<PairingInterval> row;
      for (std::size_t k = 0; k < r; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    PairingInterval term = m[0][j] * interval_determinant(std::move(minor));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

struct RegulatorReport {
  std::vector<std::vector<PairingInterval>> matrix;
  PairingInterval determinant;
  bool nonzero = false;  ///< the interval excludes 0
};

inline RegulatorReport regulator_interval(const WeierstrassModel& E, std::span<const ProjPoint> points,
                                          const Rational& target_error, CanonicalHeightOptions opt = {}) {
  const std::size_t r = points.size();
  RegulatorReport rep;
  rep.matrix.assign(r, std::vector<PairingInterval>(r));
  std::vector<PairingInterval> diag;
  for (const auto& P : points) diag.push_back(to_interval(canonical_height(E, P, target_error, opt)));
  for (std::size_t i = 0; i < r; ++i) {
    rep.matrix[i][i] = diag[i];
    for (std::size_t j = i + 1; j < r; ++j) {
      const PairingInterval hs = to_interval(canonical_height(E, add(E, points[i], points[j]), target_error, opt));
      rep.matrix[i][j] = rep.matrix[j][i] = Rational(1, 2) * (hs - diag[i] - diag[j]);
    }
  }
  rep.determinant = interval_determinant(rep.matrix);
  rep.nonzero = rep.determinant.excludes_zero();
  return rep;
}

}  // namespace ffh
