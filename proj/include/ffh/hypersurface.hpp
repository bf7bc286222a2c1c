#pragma once

// Reduction modulo rationally parametrized hypersurfaces G of P^n.
//
// G is given by a form F and an isomorphism theta : P^{n-1} -> G (hyperplanes)
// or P^1 -> G (smooth plane conics). Functions on G are pulled back along
// theta, so heights over Q(G) are degrees in the parameters U0, U1, ...

#include <numeric>
#include <optional>
#include <vector>

#include "ffh/heights.hpp"

namespace ffh {

enum class HypersurfaceKind { hyperplane, plane_conic };

struct RationalHypersurface {
  MultiPoly F;
  int degree = 0;
  std::vector<MultiPoly> theta;  ///< images of S0..Sn, forms in the parameter space
  HypersurfaceKind kind = HypersurfaceKind::hyperplane;

  VarSpace parameter_space() const { return theta.front().space(); }
  int n() const { return F.space().dimension(); }
};

namespace detail {
inline void check_parametrization(const RationalHypersurface& G) {
  if (!substitute(G.F, G.theta).is_zero())
    throw InternalError("parametrization does not lie on " + format_poly(G.F));
}
}  // namespace detail

/// Hyperplane F = 0: the pivot is the highest-index variable with a nonzero
/// coefficient; every other Si becomes a parameter.
inline RationalHypersurface hyperplane(const MultiPoly& F) {
  if (F.space().kind != VarKind::homogeneous) throw ValidationError("hyperplane form must be in S0..Sn");
  if (F.is_zero()) throw ValidationError("hyperplane form is zero");
  if (F.total_degree() != 1 || !F.is_homogeneous()) throw ValidationError("hyperplane form must be linear: " + format_poly(F));
  const int count = F.space().count;
  const MultiPoly Fp = primitive_part(F);
  std::vector<Rational> c(count);
  for (const auto& t : Fp.terms())
    for (int i = 0; i < count; ++i)
      if (t.mono.exp[i] == 1) c[i] = t.coef;
  int pivot = count - 1;
  while (c[pivot] == 0) --pivot;
  // theta_i = |c_p| U for i != p, theta_p = -sign(c_p) sum c_i U
  const Rational cp = c[pivot];
  const Rational sign = cp > 0 ? Rational(1) : Rational(-1);
  const VarSpace u = VarSpace::param(count - 1);
  RationalHypersurface G{Fp, 1, std::vector<MultiPoly>(count, MultiPoly(u)), HypersurfaceKind::hyperplane};
  int next = 0;
  MultiPoly rest(u);
  for (int i = 0; i < count; ++i) {
    if (i == pivot) continue;
    const MultiPoly ui = MultiPoly::variable(u, next++);
    G.theta[i] = ui * Rational(abs(cp));
    if (c[i] != 0) rest += ui * c[i];
  }
  G.theta[pivot] = rest * Rational(-sign);
  detail::check_parametrization(G);
  return G;
}

/// Symmetric matrix of a ternary quadratic form: Q(X) = X^T M X.
inline std::array<std::array<Rational, 3>, 3> quadratic_form_matrix(const MultiPoly& F) {
  std::array<std::array<Rational, 3>, 3> M{};
  for (const auto& t : F.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
      for (std::uint32_t e = 0; e < t.mono.exp[i]; ++e) idx.push_back(i);
    if (idx[0] == idx[1]) {
      M[idx[0]][idx[0]] += t.coef;
    } else {
      M[idx[0]][idx[1]] += t.coef / 2;
      M[idx[1]][idx[0]] += t.coef / 2;
    }
  }
  return M;
}

inline Rational determinant3(const std::array<std::array<Rational, 3>, 3>& M) {
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

inline constexpr int kConicSearchBound = 30;

/// Rational point on the conic with coordinates bounded by `bound`: smallest
/// height first, then fewest nonzero coordinates.
inline std::optional<std::array<Integer, 3>> find_conic_point(const MultiPoly& F, int bound = kConicSearchBound) {
  for (int h = 1; h <= bound; ++h) {
    std::optional<std::array<int, 3>> best;
    int best_nonzero = 4;
    for (int c = 0; c <= h; ++c)
      for (int a = -h; a <= h; ++a)
        for (int b = -h; b <= h; ++b) {
          if (std::max({std::abs(a), std::abs(b), c}) != h) continue;
          if (c == 0 && (a < 0 || (a == 0 && b <= 0))) continue;
          if (std::gcd(std::gcd(std::abs(a), std::abs(b)), c) != 1) continue;
          const int nonzero = (c != 0) + (a != 0) + (b != 0);
          if (nonzero >= best_nonzero) continue;
          const std::array<Rational, 3> p{Rational(c), Rational(a), Rational(b)};
          if (F.evaluate(p) == 0) {
            best = std::array<int, 3>{c, a, b};
            best_nonzero = nonzero;
          }
        }
    if (best) return std::array<Integer, 3>{Integer((*best)[0]), Integer((*best)[1]), Integer((*best)[2])};
  }
  return std::nullopt;
}

/// Smooth conic F = 0 in P^2, parametrized by the pencil of lines through a
/// rational point p: X = Q(d) p - 2 B(p, d) d with direction d linear in (U0, U1).
inline RationalHypersurface conic(const MultiPoly& F, std::optional<std::array<Integer, 3>> point = std::nullopt) {
  if (F.space() != VarSpace::homogeneous(2)) throw ValidationError("conics are supported in P^2 only");
  if (F.total_degree() != 2 || !F.is_homogeneous()) throw ValidationError("conic form must be quadratic: " + format_poly(F));
  const auto M = quadratic_form_matrix(F);
  if (determinant3(M) == 0) throw ValidationError("singular conic: " + format_poly(F));
  if (point) {
    const std::array<Rational, 3> p{Rational((*point)[0]), Rational((*point)[1]), Rational((*point)[2])};
    if (F.evaluate(p) != 0) throw ValidationError("supplied point is not on the conic");
  } else {
    point = find_conic_point(F);
    if (!point) throw ValidationError("no rational point found on " + format_poly(F) + " within the search bound");
  }
  const VarSpace u = VarSpace::param(2);
  std::array<Rational, 3> p{Rational((*point)[0]), Rational((*point)[1]), Rational((*point)[2])};
  int first = 0;
  while (p[first] == 0) ++first;
  std::array<MultiPoly, 3> d{MultiPoly(u), MultiPoly(u), MultiPoly(u)};
  for (int i = 0, next = 0; i < 3; ++i)
    if (i != first) d[i] = MultiPoly::variable(u, next++);
  MultiPoly qd(u), bpd(u);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (M[i][j] == 0) continue;
      qd += d[i] * d[j] * M[i][j];
      bpd += d[j] * (M[i][j] * p[i]);
    }
  std::vector<MultiPoly> theta(3, MultiPoly(u));
  for (int i = 0; i < 3; ++i) theta[i] = qd * p[i] - bpd * d[i] * Rational(2);
  // jointly primitive, positive leading coefficient on the first nonzero form
  MultiPoly g = poly_gcd(std::span<const MultiPoly>(theta));
  Integer num_gcd = 0, den_lcm = 1;
  for (auto& f : theta) {
    if (!g.is_constant()) f = divide_or_throw(f, g, "conic");
    for (const auto& t : f.terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    }
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  for (const auto& f : theta)
    if (!f.is_zero()) {
      if (f.leading_coefficient() < 0) scale = -scale;
      break;
    }
  for (auto& f : theta) f = f * scale;
  if (theta[0].total_degree() > 2) throw InternalError("conic parametrization has the wrong degree");
  RationalHypersurface G{primitive_part(F), 2, std::move(theta), HypersurfaceKind::plane_conic};
  detail::check_parametrization(G);
  return G;
}

/// Form of degree 1 or 2 in S0..Sn, dispatched to hyperplane or conic.
inline RationalHypersurface make_hypersurface(const MultiPoly& F, std::optional<std::array<Integer, 3>> point = std::nullopt) {
  if (F.total_degree() == 1) return hyperplane(F);
  if (F.total_degree() == 2) return conic(F, point);
  throw ValidationError("only hyperplanes and plane conics are supported: " + format_poly(F));
}

// ---------------------------------------------------------------------------

/// E_G : Y^2 Z = X^3 + A_G X Z^2 + B_G Z^3 over the parameter field,
/// A_G = Ahom(theta) / theta_0^{deg A}.
struct ReducedCurve {
  RationalHypersurface gamma;
  WeierstrassModel model;
};

inline ReducedCurve reduce_curve(const FunctionFieldCurve& curve, const RationalHypersurface& G) {
  if (G.F.space() != curve.homogeneous_space()) throw ValidationError("hypersurface lives in a different P^n");
  const MultiPoly& theta0 = G.theta[0];
  if (theta0.is_zero()) throw PoleAtGamma("A and B have poles along " + format_poly(G.F));
  const WeierstrassModel E = curve.model();
  auto pull = [&](const FormFraction& f) -> FormFraction {
    return {substitute(f.num, G.theta), theta0.pow(static_cast<unsigned>(f.den.total_degree()))};
  };
  ReducedCurve r{G, {G.parameter_space(), pull(E.a), pull(E.b)}};
  if (r.model.discriminant().num.is_zero())
    throw SingularReduction("the discriminant vanishes identically on " + format_poly(G.F));
  return r;
}

inline ProjPoint reduce_point(const ProjPoint& P, const RationalHypersurface& G) {
  MultiPoly x = substitute(P.x(), G.theta), y = substitute(P.y(), G.theta), z = substitute(P.z(), G.theta);
  if (x.is_zero() && y.is_zero() && z.is_zero())
    throw InternalError("all coordinates of " + format_point(P) + " vanish on " + format_poly(G.F));
  return normalize_point(std::move(x), std::move(y), std::move(z));
}

inline long gamma_weil_height(const ProjPoint& PG) { return PG.degree(); }

struct LehDefect {
  long lhs = 0;  ///< h_{E_G}(P_G)
  long rhs = 0;  ///< deg G * h_E(P)
  long defect = 0;
};

inline LehDefect leh_defect(const ProjPoint& P, const RationalHypersurface& G) {
  LehDefect d;
  d.lhs = gamma_weil_height(reduce_point(P, G));
  d.rhs = G.degree * weil_height(P);
  d.defect = d.rhs - d.lhs;
  if (d.defect < 0) throw InternalError("negative height defect");
  return d;
}

inline LehDefect leh_defect(const FunctionFieldCurve& curve, const ProjPoint& P, const RationalHypersurface& G) {
  reduce_curve(curve, G);
  detail::require_on_curve(curve.model(), P, "leh_defect");
  return leh_defect(P, G);
}

struct TheoremALevel {
  int m = 0;
  std::optional<LehDefect> defect;
  std::string error;  ///< set when the level could not be computed
};

struct TheoremAReport {
  std::vector<TheoremALevel> levels;
  std::optional<HeightEstimate> k_side;      ///< h^_E(P)
  std::optional<HeightEstimate> gamma_side;  ///< h^_{E_G}(P_G)
  PairingInterval k_interval;
  PairingInterval gamma_interval;  ///< gamma side divided by deg G
  bool overlap = false;
  Rational combined_radius;
  std::string canonical_error;

  bool all_defects_zero() const {
    for (const auto& l : levels)
      if (!l.defect || l.defect->defect != 0) return false;
    return true;
  }
};

/// Defects of [2^m]P for m = 0..max_level, then the canonical heights of P over
/// K and of P_G over Q(G) at level max_level.
inline TheoremAReport theorem_a_report(const FunctionFieldCurve& curve, const ProjPoint& P, const RationalHypersurface& G,
                                       int max_level, const Rational& target_error, int degree_ceiling = 2000) {
  const ReducedCurve red = reduce_curve(curve, G);
  const WeierstrassModel E = curve.model();
  detail::require_on_curve(E, P, "theorem_a_report");
  TheoremAReport rep;
  std::vector<long> k_heights;
  bool k_torsion = false;
  std::vector<ProjPoint> orbit{P};
  for (int m = 0; m <= max_level; ++m) {
    TheoremALevel lvl{m, std::nullopt, {}};
    if (m > 0) {
      try {
        orbit.push_back(doubling_orbit(E, orbit.back(), 1, degree_ceiling).back());
      } catch (const DegreeCeilingExceeded& e) {
        lvl.error = e.what();
        rep.levels.push_back(lvl);
        break;
      }
    }
    lvl.defect = leh_defect(orbit.back(), G);
    k_heights.push_back(weil_height(orbit.back()));
    rep.levels.push_back(lvl);
    if (orbit_is_periodic(orbit)) {
      k_torsion = true;
      break;
    }
  }
  const Rational k_apriori(2 * E.discriminant_degree());
  if (rep.levels.back().error.empty()) {
    rep.k_side = estimate_from_heights(k_heights, k_torsion, k_apriori);
    try {
      const ProjPoint PG = reduce_point(P, G);
      CanonicalHeightOptions opt{max_level, max_level, degree_ceiling};
      rep.gamma_side = canonical_height(red.model, PG, target_error, opt);
      rep.k_interval = to_interval(*rep.k_side);
      rep.gamma_interval = Rational(1, G.degree) * to_interval(*rep.gamma_side);
      rep.overlap = intervals_overlap(rep.k_interval, rep.gamma_interval);
      rep.combined_radius = rep.k_interval.radius + rep.gamma_interval.radius;
    } catch (const DegreeCeilingExceeded& e) {
      rep.canonical_error = e.what();
    }
  } else {
    rep.canonical_error = rep.levels.back().error;
  }
  return rep;
}

}  // namespace ffh
