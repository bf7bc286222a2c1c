#pragma once

// Points of a Weierstrass model in normalized homogeneous coordinates and the
// group law.
//
// A point is a triple of forms [x : y : z] of one common degree with no common
// factor. The canonical representative has jointly coprime integer
// coefficients and a positive leading coefficient on y (else x, else z), so
// equality of points is equality of term maps.
//
// A = a / alpha and B = b / beta are degree-zero fractions; every formula below
// is written with those denominators cleared.

#include <optional>
#include <random>
#include <vector>

#include "ffh/curve.hpp"
#include "ffh/identity.hpp"

namespace ffh {

class ProjPoint {
 public:
  static ProjPoint infinity(VarSpace space) {
    return ProjPoint(MultiPoly(space), MultiPoly::constant(space, 1), MultiPoly(space));
  }

  const MultiPoly& x() const { return x_; }
  const MultiPoly& y() const { return y_; }
  const MultiPoly& z() const { return z_; }
  const VarSpace& space() const { return y_.space(); }

  /// Common degree of the normalized coordinates.
  int degree() const {
    return std::max({x_.total_degree(), y_.total_degree(), z_.total_degree()});
  }
  bool is_infinity() const { return z_.is_zero(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
  }

 private:
  friend ProjPoint normalize_point(MultiPoly x, MultiPoly y, MultiPoly z);
  friend ProjPoint negate(const ProjPoint& p);
  ProjPoint(MultiPoly x, MultiPoly y, MultiPoly z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

  MultiPoly x_, y_, z_;
};

inline std::string format_point(const ProjPoint& p) {
  return "[" + format_poly(p.x()) + " : " + format_poly(p.y()) + " : " + format_poly(p.z()) + "]";
}

namespace detail {

inline void apply_sign_rule(MultiPoly& x, MultiPoly& y, MultiPoly& z) {
  const MultiPoly& lead = !y.is_zero() ? y : (!x.is_zero() ? x : z);
  if (lead.leading_coefficient() < 0) {
    x = -x;
    y = -y;
    z = -z;
  }
}

}  // namespace detail

/// Removes the common factor, scales to coprime integer coefficients and fixes
/// the sign. Inputs in T-space are first homogenized to their maximum degree.
inline ProjPoint normalize_point(MultiPoly x, MultiPoly y, MultiPoly z) {
  MultiPoly::same_space(x, y);
  MultiPoly::same_space(y, z);
  if (x.is_zero() && y.is_zero() && z.is_zero()) throw ValidationError("point with all coordinates zero");
  if (x.space().kind == VarKind::affine) {
    const int d = std::max({x.total_degree(), y.total_degree(), z.total_degree()});
    auto lift = [&](const MultiPoly& f) {
      return f.is_zero() ? MultiPoly(VarSpace::homogeneous(f.space().count)) : homogenize(f, d);
    };
    x = lift(x);
    y = lift(y);
    z = lift(z);
  }
  int degree = -1;
  for (const MultiPoly* f : {&x, &y, &z}) {
    if (f->is_zero()) continue;
    if (!f->is_homogeneous()) throw ValidationError("point coordinate is not homogeneous: " + format_poly(*f));
    if (degree >= 0 && f->total_degree() != degree)
      throw ValidationError("point coordinates have different degrees");
    degree = f->total_degree();
  }

  std::vector<const MultiPoly*> by_size;
  for (const MultiPoly* f : {&x, &y, &z})
    if (!f->is_zero()) by_size.push_back(f);
  std::sort(by_size.begin(), by_size.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
  MultiPoly g = primitive_part(*by_size[0]);
  for (std::size_t i = 1; i < by_size.size() && !g.is_constant(); ++i) g = poly_gcd(g, *by_size[i]);

  auto reduce = [&](MultiPoly& f) {
    if (!f.is_zero() && !g.is_constant()) f = divide_or_throw(f, g, "normalize_point");
  };
  reduce(x);
  reduce(y);
  reduce(z);

  Integer num_gcd = 0, den_lcm = 1;
  for (const MultiPoly* f : {&x, &y, &z})
    for (const auto& t : f->terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (scale != 1) {
    x = x * scale;
    y = y * scale;
    z = z * scale;
  }
  detail::apply_sign_rule(x, y, z);
  return ProjPoint(std::move(x), std::move(y), std::move(z));
}

/// Point from affine coordinates (X, Y) given as T-polynomials.
inline ProjPoint affine_point(const MultiPoly& X, const MultiPoly& Y) {
  return normalize_point(X, Y, MultiPoly::constant(X.space(), 1));
}

inline ProjPoint negate(const ProjPoint& p) {
  MultiPoly x = p.x_, y = -p.y_, z = p.z_;
  detail::apply_sign_rule(x, y, z);
  return ProjPoint(std::move(x), std::move(y), std::move(z));
}

// ---------------------------------------------------------------------------
// Curve membership

/// alpha beta (y^2 z - x^3) - a beta x z^2 - b alpha z^3, which vanishes iff P is on the model.
inline MultiPoly curve_equation(const WeierstrassModel& E, const ProjPoint& P) {
  const auto& [a, alpha] = E.a;
  const auto& [b, beta] = E.b;
  const MultiPoly &x = P.x(), &y = P.y(), &z = P.z();
  const MultiPoly z2 = z * z;
  const MultiPoly ab = alpha * beta;
  return ab * (y * y * z - x * x * x) - a * beta * x * z2 - b * alpha * z2 * z;
}

inline Rational curve_equation_at(const WeierstrassModel& E, const ProjPoint& P, std::span<const Rational> at) {
  const Rational a = E.a.num.evaluate(at), alpha = E.a.den.evaluate(at);
  const Rational b = E.b.num.evaluate(at), beta = E.b.den.evaluate(at);
  const Rational x = P.x().evaluate(at), y = P.y().evaluate(at), z = P.z().evaluate(at);
  return alpha * beta * (y * y * z - x * x * x) - a * beta * x * z * z - b * alpha * z * z * z;
}

enum class MembershipCheck {
  exact,    ///< expand the curve equation
  sampled,  ///< evaluate at random points (a "false" answer is always certified)
  automatic ///< exact for small degrees, sampled otherwise
};

inline constexpr int kExactMembershipDegree = 12;
inline constexpr int kMembershipTrials = 12;

inline bool is_on_curve(const WeierstrassModel& E, const ProjPoint& P, MembershipCheck mode = MembershipCheck::automatic) {
  if (!(P.space() == E.space)) throw ValidationError("point and curve live over different spaces");
  if (P.is_infinity()) return true;
  if (mode == MembershipCheck::automatic)
    mode = P.degree() <= kExactMembershipDegree ? MembershipCheck::exact : MembershipCheck::sampled;
  if (mode == MembershipCheck::exact) return curve_equation(E, P).is_zero();
  std::mt19937_64 rng(sampling_seed().load() ^ static_cast<std::uint64_t>(P.degree()));
  for (int i = 0; i < kMembershipTrials; ++i) {
    auto at = random_sample_point(E.space.count, rng);
    if (E.a.den.evaluate(at) == 0 || E.b.den.evaluate(at) == 0) continue;
    if (curve_equation_at(E, P, at) != 0) return false;
  }
  return true;
}

inline bool is_on_curve(const FunctionFieldCurve& curve, const ProjPoint& P, MembershipCheck mode = MembershipCheck::automatic) {
  return is_on_curve(curve.model(), P, mode);
}

namespace detail {
inline void require_on_curve(const WeierstrassModel& E, const ProjPoint& P, const char* op) {
  if (!is_on_curve(E, P)) throw ValidationError(std::string(op) + ": point is not on the curve: " + format_point(P));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Doubling

/// Tangent-line doubling over the fraction field, cleared to a projective triple.
inline ProjPoint tangent_double(const WeierstrassModel& E, const ProjPoint& P) {
  if (P.is_infinity() || P.y().is_zero()) return ProjPoint::infinity(E.space);
  const auto& [a, alpha] = E.a;
  const MultiPoly &x = P.x(), &y = P.y(), &z = P.z();
  // slope = L / M
  const MultiPoly L = alpha * x * x * Rational(3) + a * z * z;
  const MultiPoly M = alpha * y * z * Rational(2);
  const MultiPoly M2 = M * M;
  const MultiPoly N = L * L * z - x * M2 * Rational(2);
  const MultiPoly M3 = M2 * M;
  return normalize_point(N * M, L * (x * M2 - N) - y * M3, M3 * z);
}

/// Raw coordinates of the projective doubling formula with third coordinate
/// 8 y^3 z^3, scaled by alpha^3 beta.
inline std::array<MultiPoly, 3> doubling_d1_raw(const WeierstrassModel& E, const ProjPoint& P) {
  const auto& [a, alpha] = E.a;
  const auto& [b, beta] = E.b;
  const MultiPoly &x = P.x(), &y = P.y(), &z = P.z();
  const MultiPoly x2 = x * x, y2 = y * y, z2 = z * z;
  const MultiPoly alpha2 = alpha * alpha;
  const MultiPoly ab = alpha * beta;
  const MultiPoly s = alpha * x2 * Rational(3) + a * z2;  // alpha (3x^2 + A z^2)
  MultiPoly c1 = y * z * ab * Rational(2) * (s * s - alpha2 * x * y2 * z * Rational(8));
  MultiPoly c2 = -(beta * s * s * s) +
                 z * y2 * alpha2 * Rational(4) *
                     (ab * x2 * x * Rational(8) + a * beta * x * z2 * Rational(2) - b * alpha * z2 * z - ab * y2 * z);
  MultiPoly c3 = y2 * y * z2 * z * alpha2 * ab * Rational(8);
  return {std::move(c1), std::move(c2), std::move(c3)};
}

/// Raw coordinates of the doubling formula obtained by substituting the curve
/// equation for x^3 (third coordinate 8 y^3 z), scaled by alpha^3 beta^2.
/// Valid only for points on the curve.
inline std::array<MultiPoly, 3> doubling_d2_raw(const WeierstrassModel& E, const ProjPoint& P) {
  const auto& [a, alpha] = E.a;
  const auto& [b, beta] = E.b;
  const MultiPoly &x = P.x(), &y = P.y(), &z = P.z();
  const MultiPoly x2 = x * x, y2 = y * y, z2 = z * z;
  const MultiPoly alpha2 = alpha * alpha, beta2 = beta * beta;
  const MultiPoly ab = alpha * beta;
  const MultiPoly a2 = a * a;
  MultiPoly c1 = y * ab * Rational(2) *
                 (alpha2 * beta * x * y2 - a * ab * x2 * z * Rational(3) - b * alpha2 * x * z2 * Rational(9) + a2 * beta * z2 * z);
  const MultiPoly w = ab * y2 - a * beta * x * z - b * alpha * z2;  // alpha beta (y^2 - A x z - B z^2)
  MultiPoly c2 = y2 * Rational(4) *
                     (alpha2 * alpha * beta2 * y2 * Rational(7) - a * alpha2 * beta2 * x * z * Rational(6) -
                      b * alpha2 * ab * z2 * Rational(9)) -
                 (alpha * w * w * Rational(27) + a * alpha2 * beta2 * x2 * x2 * Rational(27) +
                  a2 * alpha * beta2 * x2 * z2 * Rational(9) + a2 * a * beta2 * z2 * z2);
  MultiPoly c3 = y2 * y * z * alpha2 * alpha * beta2 * Rational(8);
  return {std::move(c1), std::move(c2), std::move(c3)};
}

enum class DoublingFormula { d1, d2 };

inline ProjPoint double_with(const WeierstrassModel& E, const ProjPoint& P, DoublingFormula f) {
  if (P.is_infinity() || P.y().is_zero()) return ProjPoint::infinity(E.space);
  auto c = f == DoublingFormula::d1 ? doubling_d1_raw(E, P) : doubling_d2_raw(E, P);
  return normalize_point(std::move(c[0]), std::move(c[1]), std::move(c[2]));
}

/// [2]P by both projective formulas; they must normalize to the same triple.
inline ProjPoint double_point(const WeierstrassModel& E, const ProjPoint& P) {
  detail::require_on_curve(E, P, "double");
  ProjPoint r1 = double_with(E, P, DoublingFormula::d1);
  ProjPoint r2 = double_with(E, P, DoublingFormula::d2);
  if (!(r1 == r2)) throw InternalError("doubling formulas disagree for " + format_point(P));
  return r2;
}

/// [2]P by the short formula only (no cross-check); used inside long doubling chains.
inline ProjPoint double_point_fast(const WeierstrassModel& E, const ProjPoint& P) {
  return double_with(E, P, DoublingFormula::d2);
}

// ---------------------------------------------------------------------------
// Addition

namespace detail {
inline ProjPoint add_unchecked(const WeierstrassModel& E, const ProjPoint& P, const ProjPoint& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const MultiPoly &x1 = P.x(), &y1 = P.y(), &z1 = P.z();
  const MultiPoly &x2 = Q.x(), &y2 = Q.y(), &z2 = Q.z();
  const MultiPoly w = x2 * z1 - x1 * z2;
  const MultiPoly u = y2 * z1 - y1 * z2;
  if (w.is_zero()) {
    if (u.is_zero()) return tangent_double(E, P);
    return ProjPoint::infinity(E.space);
  }
  // slope u / w on the affine chart, cleared to projective coordinates
  const MultiPoly z1z2 = z1 * z2;
  const MultiPoly w2 = w * w, w3 = w2 * w;
  const MultiPoly x1z2 = x1 * z2;
  const MultiPoly Ap = u * u * z1z2 - w3 - w2 * x1z2 * Rational(2);
  return normalize_point(w * Ap, u * (w2 * x1z2 - Ap) - w3 * y1 * z2, w3 * z1z2);
}
}  // namespace detail

inline ProjPoint add(const WeierstrassModel& E, const ProjPoint& P, const ProjPoint& Q) {
  detail::require_on_curve(E, P, "add");
  detail::require_on_curve(E, Q, "add");
  return detail::add_unchecked(E, P, Q);
}

struct ScalarOptions {
  /// Abort with DegreeCeilingExceeded if an intermediate degree exceeds this.
  int degree_ceiling = 0;  ///< 0 = unlimited
};

/// [m]P by double-and-add.
inline ProjPoint scalar_multiply(const WeierstrassModel& E, long m, const ProjPoint& P, ScalarOptions opt = {}) {
  detail::require_on_curve(E, P, "scalar_multiply");
  if (m < 0) return negate(scalar_multiply(E, -m, P, opt));
  ProjPoint R = ProjPoint::infinity(E.space);
  if (m == 0) return R;
  int top = 63;
  while (((static_cast<unsigned long>(m) >> top) & 1ul) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    R = double_point_fast(E, R);
    if ((static_cast<unsigned long>(m) >> bit) & 1ul) R = detail::add_unchecked(E, R, P);
    if (opt.degree_ceiling > 0 && R.degree() > opt.degree_ceiling)
      throw DegreeCeilingExceeded("scalar_multiply: degree " + std::to_string(R.degree()) + " exceeds ceiling", bit,
                                  R.degree());
  }
  return R;
}

// ---------------------------------------------------------------------------
// Infinity chart transport

/// P = [x:y:z] on E  ->  P' = [S0^{2k} S1^k x : S0^{3k} y : S1^{3k} z] on E'.
inline ProjPoint transport_to_infinity_model(const InfinityModel& im, const ProjPoint& P) {
  const auto k = static_cast<std::uint32_t>(im.k);
  const MultiPoly s0 = MultiPoly::variable(P.space(), 0), s1 = MultiPoly::variable(P.space(), 1);
  if (P.is_infinity()) return P;
  return normalize_point(P.x() * s0.pow(2 * k) * s1.pow(k), P.y() * s0.pow(3 * k), P.z() * s1.pow(3 * k));
}

}  // namespace ffh
