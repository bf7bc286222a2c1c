#pragma once

// Specialization at rational points t of P^n: fibers E_t over Q, the doubling
// and nonsingular-multiple lemmas, the trichotomy at infinity, canonical
// heights over Q and injectivity experiments along a line.

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ffh/hypersurface.hpp"

namespace ffh {

/// Point of P^n(Q) with coprime integer coordinates, first nonzero one positive.
class RationalPointPn {
 public:
  static RationalPointPn make(std::vector<Rational> coords) {
    if (coords.empty()) throw ValidationError("empty point");
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : coords) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    if (num_gcd == 0) throw ValidationError("point of projective space with all coordinates zero");
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (const auto& c : coords)
      if (c != 0) {
        if (c < 0) scale = -scale;
        break;
      }
    RationalPointPn p;
    for (const auto& c : coords) {
      Rational v = c * scale;
      p.coords_.push_back(v.get_num());
    }
    return p;
  }
  static RationalPointPn make(std::initializer_list<long> coords) {
    std::vector<Rational> v;
    for (long c : coords) v.emplace_back(c);
    return make(std::move(v));
  }

  const std::vector<Integer>& coords() const { return coords_; }
  std::vector<Rational> rational_coords() const {
    std::vector<Rational> v;
    for (const auto& c : coords_) v.emplace_back(c);
    return v;
  }
  int n() const { return static_cast<int>(coords_.size()) - 1; }
  Integer naive_height() const {
    Integer h = 0;
    for (const auto& c : coords_)
      if (abs(c) > h) h = abs(c);
    return h;
  }
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + coords_[i].get_str();
    return s + "]";
  }

  friend bool operator==(const RationalPointPn&, const RationalPointPn&) = default;

 private:
  std::vector<Integer> coords_;
};

// ---------------------------------------------------------------------------
// Cubics over Q

/// Affine point of y^2 = x^3 + a x + b over Q, or the point at infinity.
struct QPoint {
  bool infinity = false;
  Rational x, y;

  static QPoint origin() { return {true, Rational(0), Rational(0)}; }
  friend bool operator==(const QPoint& p, const QPoint& q) {
    return p.infinity == q.infinity && (p.infinity || (p.x == q.x && p.y == q.y));
  }
  std::string str() const { return infinity ? "[0:1:0]" : "(" + x.get_str() + ", " + y.get_str() + ")"; }
};

enum class FiberClass { nonsingular, node, cusp };

inline const char* to_string(FiberClass c) {
  switch (c) {
    case FiberClass::nonsingular: return "nonsingular";
    case FiberClass::node: return "node";
    case FiberClass::cusp: return "cusp";
  }
  return "?";
}

struct SpecializedCurve {
  Rational a, b;
  Rational disc;
  FiberClass fiber = FiberClass::nonsingular;

  static SpecializedCurve make(Rational a, Rational b) {
    SpecializedCurve c{std::move(a), std::move(b), Rational(0), FiberClass::nonsingular};
    c.disc = -16 * (4 * c.a * c.a * c.a + 27 * c.b * c.b);
    if (c.disc == 0) c.fiber = c.a == 0 ? FiberClass::cusp : FiberClass::node;
    return c;
  }

  /// The node or cusp of a singular fiber.
  std::optional<QPoint> singular_point() const {
    if (fiber == FiberClass::nonsingular) return std::nullopt;
    if (fiber == FiberClass::cusp) return QPoint{false, Rational(0), Rational(0)};
    Rational x0 = -3 * b / (2 * a);
    return QPoint{false, x0, Rational(0)};
  }

  bool contains(const QPoint& p) const { return p.infinity || p.y * p.y == p.x * p.x * p.x + a * p.x + b; }
  std::string str() const { return "y^2 = x^3 + (" + a.get_str() + ")x + (" + b.get_str() + ")"; }
};

inline QPoint q_negate(const QPoint& p) { return p.infinity ? p : QPoint{false, p.x, -p.y}; }

/// Chord-tangent law; valid on the nonsingular locus of any fiber.
inline QPoint q_add(const SpecializedCurve& E, const QPoint& p, const QPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  Rational lambda;
  if (p.x == q.x) {
    if (p.y != q.y || p.y == 0) return QPoint::origin();
    lambda = (3 * p.x * p.x + E.a) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Rational x3 = lambda * lambda - p.x - q.x;
  Rational y3 = lambda * (p.x - x3) - p.y;
  return {false, x3, y3};
}

inline QPoint q_double(const SpecializedCurve& E, const QPoint& p) { return q_add(E, p, p); }

inline QPoint q_multiply(const SpecializedCurve& E, long m, const QPoint& p) {
  if (m < 0) return q_negate(q_multiply(E, -m, p));
  QPoint r = QPoint::origin(), base = p;
  for (; m > 0; m >>= 1) {
    if (m & 1) r = q_add(E, r, base);
    base = q_double(E, base);
  }
  return r;
}

/// Order of p when it is at most `bound` (12 covers every torsion point over Q), else 0.
inline int q_torsion_order(const SpecializedCurve& E, const QPoint& p, int bound = 12) {
  QPoint r = p;
  for (int k = 1; k <= bound; ++k) {
    if (r.infinity) return k;
    r = q_add(E, r, p);
  }
  return 0;
}

inline bool is_singular_specialized_point(const SpecializedCurve& E, const QPoint& p) {
  if (!E.contains(p)) throw ValidationError("point " + p.str() + " is not on " + E.str());
  auto s = E.singular_point();
  return s && *s == p;
}

// ---------------------------------------------------------------------------
// Specialization maps

struct SpecializedPoint {
  bool indeterminate = false;
  std::array<Integer, 3> coords{};  ///< coprime, first nonzero of (z, y, x) positive

  QPoint affine() const {
    if (indeterminate) throw ValidationError("specialization is indeterminate");
    if (coords[2] == 0) return QPoint::origin();
    Rational x(coords[0], coords[2]), y(coords[1], coords[2]);
    x.canonicalize();
    y.canonicalize();
    return {false, x, y};
  }
  std::string str() const {
    if (indeterminate) return "indeterminate";
    return "[" + coords[0].get_str() + ":" + coords[1].get_str() + ":" + coords[2].get_str() + "]";
  }
};

inline SpecializedPoint specialize_triple(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z,
                                          std::span<const Rational> t) {
  std::array<Rational, 3> v{x.evaluate(t), y.evaluate(t), z.evaluate(t)};
  SpecializedPoint sp;
  if (v[0] == 0 && v[1] == 0 && v[2] == 0) {
    sp.indeterminate = true;
    return sp;
  }
  RationalPointPn p = RationalPointPn::make({v[2], v[1], v[0]});
  sp.coords = {p.coords()[2], p.coords()[1], p.coords()[0]};
  return sp;
}

inline SpecializedPoint specialize_point(const ProjPoint& P, const RationalPointPn& t) {
  if (t.n() != P.space().dimension()) throw ValidationError("specialization point has the wrong dimension");
  const auto tv = t.rational_coords();
  return specialize_triple(P.x(), P.y(), P.z(), tv);
}

inline SpecializedCurve specialize_model(const WeierstrassModel& E, std::span<const Rational> t) {
  return SpecializedCurve::make(E.a.evaluate(t), E.b.evaluate(t));
}

inline SpecializedCurve specialize_curve(const FunctionFieldCurve& curve, const RationalPointPn& t) {
  if (t.n() != curve.n()) throw ValidationError("specialization point has the wrong dimension");
  if (t.coords()[0] == 0) throw ValidationError("t = " + t.str() + " lies on the hyperplane at infinity");
  const auto tv = t.rational_coords();
  return specialize_model(curve.model(), tv);
}

/// ([2]P)_t = [2] P_t for P_t defined and nonsingular on E_t.
inline bool dl_check(const FunctionFieldCurve& curve, const ProjPoint& P, const RationalPointPn& t) {
  const SpecializedCurve Et = specialize_curve(curve, t);
  const SpecializedPoint Pt = specialize_point(P, t);
  if (Pt.indeterminate) throw ValidationError("P_t is indeterminate at t = " + t.str());
  const QPoint pt = Pt.affine();
  if (is_singular_specialized_point(Et, pt)) throw ValidationError("P_t is singular at t = " + t.str());
  const SpecializedPoint lhs = specialize_point(double_point(curve.model(), P), t);
  if (lhs.indeterminate) return false;
  return lhs.affine() == q_double(Et, pt);
}

// ---------------------------------------------------------------------------
// Nonsingular multiples

/// P reduces to the singular point of E mod g: all partials of
/// Y^2 Z - X^3 - A X Z^2 - B Z^3 vanish identically modulo g.
inline bool reduction_is_singular(const FunctionFieldCurve& curve, const ProjPoint& P, const MultiPoly& g) {
  if (P.is_infinity()) return false;
  const MultiPoly x = dehomogenize(P.x()), y = dehomogenize(P.y()), z = dehomogenize(P.z());
  const MultiPoly &A = curve.A(), &B = curve.B();
  const MultiPoly fx = -(x * x * Rational(3)) - A * z * z;
  const MultiPoly fy = y * z * Rational(2);
  const MultiPoly fz = y * y - A * x * z * Rational(2) - B * z * z * Rational(3);
  return divides(g, fx) && divides(g, fy) && divides(g, fz);
}

struct NonsingularMultiple {
  long N = 1;
  std::vector<long> per_divisor;  ///< least n with ([n]P) nonsingular mod each factor
};

inline constexpr long kNonsingularMultipleCap = 64;

inline NonsingularMultiple nonsingular_multiple(const FunctionFieldCurve& curve, const ProjPoint& P,
                                                const ValidatedDivisors& divisors, long cap = kNonsingularMultipleCap) {
  if (!is_minimal(curve)) throw ValidationError("nonsingular_multiple needs a minimal model");
  const WeierstrassModel E = curve.model();
  detail::require_on_curve(E, P, "nonsingular_multiple");
  NonsingularMultiple out;
  for (const auto& f : divisors.factors) {
    ProjPoint Q = P;
    long n = 1;
    while (reduction_is_singular(curve, Q, f.factor)) {
      if (++n > cap)
        throw CapExceeded("no nonsingular multiple up to " + std::to_string(cap) + " modulo " + format_poly(f.factor));
      Q = detail::add_unchecked(E, Q, P);
    }
    out.per_divisor.push_back(n);
    out.N = std::lcm(out.N, n);
  }
  const ProjPoint R = scalar_multiply(E, out.N, P);
  for (const auto& f : divisors.factors)
    if (reduction_is_singular(curve, R, f.factor))
      throw InternalError("[N]P is singular modulo " + format_poly(f.factor));
  return out;
}

// ---------------------------------------------------------------------------
// Trichotomy on the hyperplane at infinity

enum class InfinityCase { a, b, c };

inline const char* to_string(InfinityCase c) {
  switch (c) {
    case InfinityCase::a: return "a";
    case InfinityCase::b: return "b";
    case InfinityCase::c: return "c";
  }
  return "?";
}

struct InfinityClassification {
  InfinityCase which = InfinityCase::a;
  ProjPoint transported;
  SpecializedPoint value;                  ///< P'_t
  std::optional<SpecializedCurve> fiber;   ///< E'_t
};

/// For t = [0 : t1 : ...] with t1 != 0 where P_t is indeterminate:
///   a: P'_t is indeterminate as well; b: P'_t is the singular point of E'_t;
///   c: P'_t is a nonsingular point of order 2.
inline InfinityClassification classify_infinity(const FunctionFieldCurve& curve, const ProjPoint& P,
                                                const RationalPointPn& t) {
  if (t.n() != curve.n()) throw ValidationError("point has the wrong dimension");
  if (t.coords()[0] != 0 || t.coords()[1] == 0)
    throw ValidationError("t must lie on S0 = 0 away from S1 = 0: " + t.str());
  detail::require_on_curve(curve.model(), P, "classify_infinity");
  if (!specialize_point(P, t).indeterminate) throw ValidationError("P is defined at t = " + t.str());
  const InfinityModel im = infinity_model(curve);
  InfinityClassification out{InfinityCase::a, transport_to_infinity_model(im, P), {}, std::nullopt};
  const auto tv = t.rational_coords();
  out.value = specialize_triple(out.transported.x(), out.transported.y(), out.transported.z(), tv);
  if (out.value.indeterminate) return out;
  out.fiber = specialize_model(im.model(), tv);
  const QPoint p = out.value.affine();
  if (!out.fiber->contains(p)) throw InternalError("P'_t is not on E'_t");
  if (is_singular_specialized_point(*out.fiber, p)) {
    out.which = InfinityCase::b;
    return out;
  }
  if (p.infinity || p.y != 0)
    throw InternalError("P'_t is neither indeterminate, singular nor of order 2 at t = " + t.str());
  out.which = InfinityCase::c;
  return out;
}

// ---------------------------------------------------------------------------
// Canonical heights over Q

struct QHeightEstimate {
  double value = 0;
  int level = 0;
  bool torsion = false;
  int torsion_order = 0;
  std::vector<double> estimates;  ///< h(x([2^m]P)) / (2 * 4^m), m = 0..level
};

inline double log_abs(const Integer& v) {
  if (v == 0) return 0;
  long e = 0;
  const double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

inline double naive_x_height(const QPoint& p) {
  if (p.infinity) return 0;
  return std::max(log_abs(p.x.get_num()), log_abs(p.x.get_den()));
}

inline constexpr int kQHeightMaxLevel = 11;

/// h^(P) ~ h(x([2^m]P)) / (2 * 4^m), stopping once the last two successive
/// differences are below tol / 2. The stopping rule is a heuristic certificate.
inline QHeightEstimate q_canonical_height(const SpecializedCurve& E, const QPoint& p, double tol,
                                          int max_level = kQHeightMaxLevel) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  if (E.fiber != FiberClass::nonsingular) throw ValidationError("q_canonical_height needs a nonsingular fiber");
  if (!E.contains(p)) throw ValidationError("point " + p.str() + " is not on " + E.str());
  QHeightEstimate est;
  if (int ord = q_torsion_order(E, p)) {
    est.torsion = true;
    est.torsion_order = ord;
    est.estimates = {0.0};
    return est;
  }
  QPoint q = p;
  double scale = 2;
  for (int m = 0; m <= max_level; ++m) {
    if (m > 0) {
      q = q_double(E, q);
      scale *= 4;
    }
    est.estimates.push_back(naive_x_height(q) / scale);
    est.level = m;
    est.value = est.estimates.back();
    const std::size_t k = est.estimates.size();
    if (k >= 3 && std::fabs(est.estimates[k - 1] - est.estimates[k - 2]) < tol / 2 &&
        std::fabs(est.estimates[k - 2] - est.estimates[k - 3]) < tol / 2)
      return est;
  }
  throw CapExceeded("canonical height over Q did not settle within " + std::to_string(max_level) + " doublings");
}

// ---------------------------------------------------------------------------
// Injectivity experiments

/// Points t = theta(q, p) of a line, s = p/q with |p| <= bound, 1 <= q <= max(bound, 1),
/// gcd(p, q) = 1, ordered by naive height of t and then lexicographically.
inline std::vector<RationalPointPn> line_points(const RationalHypersurface& line, long bound) {
  if (line.kind != HypersurfaceKind::hyperplane || line.parameter_space().count != 2)
    throw ValidationError("injectivity experiments run along a line in P^2");
  std::vector<RationalPointPn> out;
  const long qmax = std::max(bound, 1L);
  for (long q = 1; q <= qmax; ++q)
    for (long p = -bound; p <= bound; ++p) {
      if (std::gcd(std::labs(p), q) != 1) continue;
      const std::array<Rational, 2> uv{Rational(q), Rational(p)};
      std::vector<Rational> c;
      for (const auto& f : line.theta) c.push_back(f.evaluate(uv));
      bool all_zero = true;
      for (const auto& v : c) all_zero = all_zero && v == 0;
      if (all_zero) continue;
      RationalPointPn t = RationalPointPn::make(std::move(c));
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
  std::sort(out.begin(), out.end(), [](const RationalPointPn& a, const RationalPointPn& b) {
    const Integer ha = a.naive_height(), hb = b.naive_height();
    if (ha != hb) return ha < hb;
    return a.coords() < b.coords();
  });
  return out;
}

enum class Verdict { independent, torsion_collision, dependent, inconclusive, skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::independent: return "independent";
    case Verdict::torsion_collision: return "torsion-collision";
    case Verdict::dependent: return "dependent";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

struct InjectivityRow {
  RationalPointPn t;
  std::string fiber_class;
  std::vector<double> hhat;
  std::vector<int> levels;
  double det = 0;
  double det_radius = 0;
  Verdict verdict = Verdict::skipped;
  std::string note;
  std::vector<long> relation;  ///< integer relation behind a "dependent" verdict
};

struct InjectivitySummary {
  long processed = 0, independent = 0, torsion_collisions = 0, dependent = 0, inconclusive = 0, skipped = 0;
};

struct InjectivityReport {
  std::vector<InjectivityRow> rows;
  InjectivitySummary summary;
};

struct DoubleInterval {
  double mid = 0, radius = 0;
  DoubleInterval operator+(const DoubleInterval& o) const { return {mid + o.mid, radius + o.radius}; }
  DoubleInterval operator-(const DoubleInterval& o) const { return {mid - o.mid, radius + o.radius}; }
  DoubleInterval operator*(const DoubleInterval& o) const {
    return {mid * o.mid, std::fabs(mid) * o.radius + std::fabs(o.mid) * radius + radius * o.radius};
  }
};

inline DoubleInterval double_determinant(const std::vector<std::vector<DoubleInterval>>& m) {
  const std::size_t r = m.size();
  if (r == 0) return {1, 0};
  if (r == 1) return m[0][0];
  DoubleInterval det{0, 0};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::vector<DoubleInterval>> minor;
    for (std::size_t i = 1; i < r; ++i) {
      std::vector<DoubleInterval> row;
      for (std::size_t k = 0; k < r; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    DoubleInterval term = m[0][j] * double_determinant(minor);
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

inline constexpr long kRelationSearchBound = 4;

namespace detail {
/// Smallest nonzero m with |m_i| <= bound and sum m_i p_i of finite order.
inline std::optional<std::vector<long>> find_relation(const SpecializedCurve& E, const std::vector<QPoint>& pts, long bound) {
  const std::size_t r = pts.size();
  std::vector<long> m(r, -bound);
  for (;;) {
    bool nonzero = false;
    for (long v : m) nonzero = nonzero || v != 0;
    if (nonzero) {
      QPoint s = QPoint::origin();
      for (std::size_t i = 0; i < r; ++i) s = q_add(E, s, q_multiply(E, m[i], pts[i]));
      if (q_torsion_order(E, s) != 0) return m;
    }
    std::size_t i = 0;
    while (i < r && m[i] == bound) m[i++] = -bound;
    if (i == r) return std::nullopt;
    ++m[i];
  }
}
}  // namespace detail

/// Specialization of the span of `generators` and `torsion` along the line.
///
/// Every generator ĥ enters the pairing matrix with radius 2 tol; a t is
/// "independent" when the determinant interval excludes 0.
inline InjectivityReport injectivity_report(const FunctionFieldCurve& curve, const std::vector<ProjPoint>& generators,
                                            const std::vector<ProjPoint>& torsion, const RationalHypersurface& line,
                                            long height_bound, double tol) {
  const WeierstrassModel E = curve.model();
  for (const auto& P : generators) detail::require_on_curve(E, P, "injectivity_report");
  for (const auto& T : torsion) {
    detail::require_on_curve(E, T, "injectivity_report");
    if (!canonical_height(E, T, Rational(1, 1000)).exact)
      throw ValidationError("claimed torsion point does not reach O under doubling: " + format_point(T));
  }
  InjectivityReport rep;
  for (const auto& t : line_points(line, height_bound)) {
    InjectivityRow row{t, "", {}, {}, 0, 0, Verdict::skipped, "", {}};
    auto skip = [&](std::string why) {
      row.verdict = Verdict::skipped;
      row.note = std::move(why);
      ++rep.summary.skipped;
      rep.rows.push_back(row);
    };
    if (t.coords()[0] == 0) {
      skip("hyperplane at infinity");
      continue;
    }
    const SpecializedCurve Et = specialize_curve(curve, t);
    row.fiber_class = to_string(Et.fiber);
    if (Et.fiber != FiberClass::nonsingular) {
      skip("singular fiber");
      continue;
    }
    std::vector<QPoint> pts;
    bool indeterminate = false;
    for (const auto& P : generators) {
      SpecializedPoint sp = specialize_point(P, t);
      if (sp.indeterminate) {
        indeterminate = true;
        break;
      }
      pts.push_back(sp.affine());
    }
    std::vector<QPoint> tors;
    for (const auto& T : torsion) {
      if (T.is_infinity()) continue;
      SpecializedPoint sp = specialize_point(T, t);
      if (sp.indeterminate) {
        indeterminate = true;
        break;
      }
      tors.push_back(sp.affine());
    }
    if (indeterminate) {
      skip("indeterminate specialization");
      continue;
    }
    ++rep.summary.processed;

    std::string collision;
    for (std::size_t i = 0; i < tors.size() && collision.empty(); ++i)
      if (tors[i].infinity) collision = "torsion point " + std::to_string(i + 1) + " specializes to O";
    for (std::size_t i = 0; i < pts.size() && collision.empty(); ++i)
      if (int ord = q_torsion_order(Et, pts[i]))
        collision = "generator " + std::to_string(i + 1) + " specializes to a point of order " + std::to_string(ord);
    if (!collision.empty()) {
      row.verdict = Verdict::torsion_collision;
      row.note = collision;
      ++rep.summary.torsion_collisions;
      rep.rows.push_back(row);
      continue;
    }

    try {
      const std::size_t r = pts.size();
      std::vector<std::vector<DoubleInterval>> M(r, std::vector<DoubleInterval>(r));
      for (std::size_t i = 0; i < r; ++i) {
        const QHeightEstimate h = q_canonical_height(Et, pts[i], tol);
        row.hhat.push_back(h.value);
        row.levels.push_back(h.level);
        M[i][i] = {h.value, 2 * tol};
      }
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
          const QHeightEstimate h = q_canonical_height(Et, q_add(Et, pts[i], pts[j]), tol);
          DoubleInterval s{h.value, 2 * tol};
          M[i][j] = M[j][i] = {0.5 * (s - M[i][i] - M[j][j]).mid, 0.5 * (s - M[i][i] - M[j][j]).radius};
        }
      const DoubleInterval det = double_determinant(M);
      row.det = det.mid;
      row.det_radius = det.radius;
      if (det.mid - det.radius > 0) {
        row.verdict = Verdict::independent;
        ++rep.summary.independent;
      } else if (auto rel = detail::find_relation(Et, pts, kRelationSearchBound)) {
        row.verdict = Verdict::dependent;
        row.relation = *rel;
        row.note = "relation verified on E_t";
        ++rep.summary.dependent;
      } else {
        row.verdict = Verdict::inconclusive;
        row.note = "determinant interval contains 0";
        ++rep.summary.inconclusive;
      }
    } catch (const CapExceeded& e) {
      row.verdict = Verdict::inconclusive;
      row.note = e.what();
      ++rep.summary.inconclusive;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ffh
