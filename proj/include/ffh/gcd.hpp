#pragma once

// Exact division, multivariate GCD and squarefree decomposition over Q.
//
// poly_gcd first removes rational and monomial content, then tries the
// heuristic GCD (evaluation at a large integer, recursive integer GCD,
// xi-adic reconstruction, trial division). When the heuristic gives up the
// subresultant pseudo-remainder sequence in the main variable is used.
// Both routes are exact; the heuristic only accepts a candidate that divides
// both inputs.

#include <optional>
#include <utility>
#include <vector>

#include "ffh/poly.hpp"

namespace ffh {

// ---------------------------------------------------------------------------
// Content

/// f = content * P with P having coprime integer coefficients and positive
/// leading coefficient. For f = 0 returns (0, 0).
inline std::pair<Rational, MultiPoly> primitive_decomposition(const MultiPoly& f) {
  if (f.is_zero()) return {Rational(0), f};
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : f.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (f.leading_coefficient() < 0) content = -content;
  if (content == 1) return {content, f};
  return {content, f * Rational(1 / content)};
}

/// Primitive integer polynomial with positive leading coefficient; 0 stays 0.
inline MultiPoly primitive_part(const MultiPoly& f) { return primitive_decomposition(f).second; }

namespace detail {

inline int main_variable(const MultiPoly& f) {
  int v = -1;
  for (const auto& t : f.terms())
    for (int i = f.space().count - 1; i > v; --i)
      if (t.mono.exp[i] != 0) {
        v = i;
        break;
      }
  return v;
}

inline int main_variable(const MultiPoly& f, const MultiPoly& g) {
  return std::max(main_variable(f), main_variable(g));
}

/// Coefficients of f viewed as a polynomial in variable v; entry k multiplies v^k.
inline std::vector<MultiPoly> coefficients_in(const MultiPoly& f, int v) {
  const int d = std::max(f.degree_in(v), 0);
  std::vector<std::vector<MultiPoly::Term>> buckets(d + 1);
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    const auto e = m.exp[v];
    m.exp[v] = 0;
    m.degree -= e;
    buckets[e].push_back({m, t.coef});
  }
  std::vector<MultiPoly> out;
  out.reserve(d + 1);
  // Removing one variable keeps relative grlex order within a bucket only up to
  // degree ties, so each bucket is re-sorted.
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(f.space(), std::move(b)));
  return out;
}

inline MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, int v, VarSpace space) {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) {
      Monomial m = t.mono;
      m.exp[v] += static_cast<std::uint32_t>(k);
      m.degree += static_cast<std::uint32_t>(k);
      terms.push_back({m, t.coef});
    }
  return MultiPoly::from_terms(space, std::move(terms));
}

inline int top_index(const std::vector<MultiPoly>& c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (!c[k].is_zero()) return k;
  return -1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact division

/// f / g when g divides f exactly, std::nullopt otherwise.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g) {
  MultiPoly::same_space(f, g);
  if (g.is_zero()) throw ValidationError("division by the zero polynomial");
  if (f.is_zero()) return f;
  if (g.is_constant()) return f * Rational(1 / g.constant_value());
  if (!g.leading_term().mono.divides(f.leading_term().mono)) return std::nullopt;
  if (!g.terms().back().mono.divides(f.terms().back().mono)) return std::nullopt;
  if (g.size() == 1) {
    const auto& gt = g.terms()[0];
    std::vector<MultiPoly::Term> out;
    out.reserve(f.size());
    const Rational inv = 1 / gt.coef;
    for (const auto& t : f.terms()) {
      if (!gt.mono.divides(t.mono)) return std::nullopt;
      out.push_back({gt.mono.cofactor_in(t.mono), t.coef * inv});
    }
    return MultiPoly::from_canonical(f.space(), std::move(out));
  }

  const int v = detail::main_variable(g);
  if (f.degree_in(v) < g.degree_in(v)) return std::nullopt;
  std::vector<MultiPoly> F = detail::coefficients_in(f, v);
  const std::vector<MultiPoly> G = detail::coefficients_in(g, v);
  const int dg = static_cast<int>(G.size()) - 1;
  const MultiPoly& lc = G[dg];
  std::vector<MultiPoly> Q(F.size() - dg, MultiPoly(f.space()));
  for (int k = static_cast<int>(F.size()) - 1; k >= dg; --k) {
    if (F[k].is_zero()) continue;
    auto q = divide_exact(F[k], lc);
    if (!q) return std::nullopt;
    for (int j = 0; j < dg; ++j)
      if (!G[j].is_zero()) F[k - dg + j] -= *q * G[j];
    Q[k - dg] = std::move(*q);
  }
  for (int k = 0; k < dg; ++k)
    if (!F[k].is_zero()) return std::nullopt;
  return detail::from_coefficients(Q, v, f.space());
}

inline bool divides(const MultiPoly& g, const MultiPoly& f) { return divide_exact(f, g).has_value(); }

/// Exact quotient; throws InternalError when g does not divide f.
inline MultiPoly divide_or_throw(const MultiPoly& f, const MultiPoly& g, const char* context) {
  auto q = divide_exact(f, g);
  if (!q) throw InternalError(std::string(context) + ": expected exact division");
  return std::move(*q);
}

inline MultiPoly derivative(const MultiPoly& f, int v) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : f.terms()) {
    const auto e = t.mono.exp[v];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.exp[v] -= 1;
    m.degree -= 1;
    terms.push_back({m, t.coef * e});
  }
  return MultiPoly::from_terms(f.space(), std::move(terms));
}

// ---------------------------------------------------------------------------
// GCD

namespace detail {

inline MultiPoly strip_monomial(const MultiPoly& f, const Monomial& m) {
  if (m.degree == 0) return f;
  std::vector<MultiPoly::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({m.cofactor_in(t.mono), t.coef});
  return MultiPoly::from_canonical(f.space(), std::move(out));
}

inline Integer max_norm(const MultiPoly& f) {
  Integer best = 0;
  for (const auto& t : f.terms())
    if (mpz_cmpabs(t.coef.get_num_mpz_t(), best.get_mpz_t()) > 0) best = abs(t.coef.get_num());
  return best;
}

inline Integer integer_content(const MultiPoly& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
  return g;
}

/// Substitutes the integer xi for variable v in an integer polynomial.
inline MultiPoly evaluate_variable(const MultiPoly& f, int v, const Integer& xi) {
  const int d = std::max(f.degree_in(v), 0);
  std::vector<Integer> powers(d + 1);
  powers[0] = 1;
  for (int k = 1; k <= d; ++k) powers[k] = powers[k - 1] * xi;
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    const auto e = m.exp[v];
    m.exp[v] = 0;
    m.degree -= e;
    Rational c;
    mpz_mul(c.get_num_mpz_t(), t.coef.get_num_mpz_t(), powers[e].get_mpz_t());
    terms.push_back({m, std::move(c)});
  }
  return MultiPoly::from_terms(f.space(), std::move(terms));
}

/// Symmetric base-xi expansion of every coefficient, digits becoming powers of v.
inline MultiPoly xi_adic_reconstruct(const MultiPoly& h, int v, const Integer& xi) {
  std::vector<MultiPoly::Term> terms;
  const Integer half = xi / 2;
  Integer c, digit;
  for (const auto& t : h.terms()) {
    c = t.coef.get_num();
    std::uint32_t k = 0;
    while (c != 0) {
      mpz_fdiv_r(digit.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (digit > half) digit -= xi;
      c -= digit;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (digit != 0) {
        Monomial m = t.mono;
        m.exp[v] += k;
        m.degree += k;
        terms.push_back({m, Rational(digit)});
      }
      ++k;
    }
  }
  return MultiPoly::from_terms(h.space(), std::move(terms));
}

// Integer bit budget for the heuristic before falling back.
inline constexpr std::size_t kHeuristicBitLimit = 1u << 24;

/// gcd in Z[x] of nonzero integer polynomials, or nullopt when the heuristic fails.
inline std::optional<MultiPoly> heuristic_gcd(const MultiPoly& f, const MultiPoly& g) {
  const Integer cf = integer_content(f), cg = integer_content(g);
  Integer c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (f.is_constant() || g.is_constant()) return MultiPoly::constant(f.space(), Rational(c));
  const MultiPoly F = f * Rational(Integer(1), cf);
  const MultiPoly G = g * Rational(Integer(1), cg);
  const int v = main_variable(F, G);
  const int deg = std::max(F.degree_in(v), G.degree_in(v));
  Integer xi = 2 * std::min(max_norm(F), max_norm(G)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(deg + 1) > kHeuristicBitLimit)
      return std::nullopt;
    const MultiPoly fe = evaluate_variable(F, v, xi);
    const MultiPoly ge = evaluate_variable(G, v, xi);
    if (!fe.is_zero() && !ge.is_zero()) {
      if (auto he = heuristic_gcd(fe, ge)) {
        MultiPoly h = primitive_part(xi_adic_reconstruct(*he, v, xi));
        if (!h.is_zero() && divides(h, F) && divides(h, G)) return h * Rational(c);
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

MultiPoly gcd_core(const MultiPoly& f, const MultiPoly& g);

/// gcd of the coefficients of f with respect to v (primitive, positive lc).
inline MultiPoly content_in(const MultiPoly& f, int v) {
  auto coeffs = coefficients_in(f, v);
  std::sort(coeffs.begin(), coeffs.end(), [](const MultiPoly& a, const MultiPoly& b) { return a.size() < b.size(); });
  MultiPoly c(f.space());
  for (const auto& k : coeffs) {
    if (k.is_zero()) continue;
    c = c.is_zero() ? primitive_part(k) : gcd_core(c, k);
    if (c.is_constant()) return MultiPoly::constant(f.space(), 1);
  }
  return c;
}

/// Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B in variable v.
inline std::vector<MultiPoly> pseudo_remainder(std::vector<MultiPoly> R, const std::vector<MultiPoly>& B) {
  const int dB = top_index(B);
  const MultiPoly& lcB = B[dB];
  int e = top_index(R) - dB + 1;
  for (int dR = top_index(R); dR >= dB; dR = top_index(R)) {
    const MultiPoly lr = R[dR];
    const int s = dR - dB;
    for (int k = 0; k <= dR; ++k) {
      if (!R[k].is_zero()) R[k] = lcB * R[k];
      if (k >= s && k - s <= dB && !B[k - s].is_zero()) R[k] -= lr * B[k - s];
    }
    --e;
  }
  if (e > 0) {
    const MultiPoly scale = lcB.pow(static_cast<unsigned>(e));
    for (auto& r : R)
      if (!r.is_zero()) r = r * scale;
  }
  return R;
}

/// Subresultant PRS gcd of primitive integer polynomials.
inline MultiPoly subresultant_gcd(const MultiPoly& f, const MultiPoly& g) {
  const VarSpace space = f.space();
  if (f.is_constant() || g.is_constant()) return MultiPoly::constant(space, 1);
  const int v = main_variable(f, g);
  if (!f.involves(v)) return gcd_core(f, content_in(g, v));
  if (!g.involves(v)) return gcd_core(content_in(f, v), g);

  const MultiPoly cf = content_in(f, v), cg = content_in(g, v);
  const MultiPoly c = gcd_core(cf, cg);
  std::vector<MultiPoly> A = coefficients_in(divide_or_throw(f, cf, "content"), v);
  std::vector<MultiPoly> B = coefficients_in(divide_or_throw(g, cg, "content"), v);
  if (top_index(A) < top_index(B)) std::swap(A, B);

  MultiPoly gg = MultiPoly::constant(space, 1), h = MultiPoly::constant(space, 1);
  for (;;) {
    const int delta = top_index(A) - top_index(B);
    std::vector<MultiPoly> R = pseudo_remainder(A, B);
    const int dR = top_index(R);
    if (dR < 0) break;
    if (dR == 0) return c;
    R.resize(dR + 1);
    A = std::move(B);
    const MultiPoly divisor = gg * h.pow(static_cast<unsigned>(delta));
    for (auto& r : R)
      if (!r.is_zero()) r = divide_or_throw(r, divisor, "subresultant");
    B = std::move(R);
    gg = A[top_index(A)];
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = gg;
    } else {
      h = divide_or_throw(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)), "subresultant h");
    }
  }
  MultiPoly last = from_coefficients(B, v, space);
  last = divide_or_throw(last, content_in(last, v), "content");
  return primitive_part(c * last);
}

inline MultiPoly gcd_core(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  MultiPoly F = primitive_part(f), G = primitive_part(g);
  Monomial mf = F.monomial_content(), mg = G.monomial_content(), m;
  for (int i = 0; i < kMaxVars; ++i) {
    m.exp[i] = std::min(mf.exp[i], mg.exp[i]);
    m.degree += m.exp[i];
  }
  F = strip_monomial(F, mf);
  G = strip_monomial(G, mg);
  MultiPoly core(f.space());
  if (F.is_constant() || G.is_constant()) {
    core = MultiPoly::constant(f.space(), 1);
  } else if (auto h = heuristic_gcd(F, G)) {
    core = primitive_part(*h);
  } else {
    core = subresultant_gcd(F, G);
  }
  return primitive_part(core.times_term(m, Rational(1)));
}

}  // namespace detail

/// Primitive greatest common divisor with positive leading coefficient in
/// graded-lex order. gcd(0, 0) = 0.
inline MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
  MultiPoly::same_space(f, g);
  if (f.is_zero() && g.is_zero()) return f;
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  if (f.space().count >= 2 && f.is_homogeneous() && g.is_homogeneous()) {
    // gcd of forms = var0^min(a_f, a_g) * homogenization of the gcd on the chart var0 = 1
    const MultiPoly fd = set_variable_to_one(f, 0), gd = set_variable_to_one(g, 0);
    const int af = f.total_degree() - fd.total_degree();
    const int ag = g.total_degree() - gd.total_degree();
    const MultiPoly h = detail::gcd_core(fd, gd);
    MultiPoly H = homogenize_with(h, 0, h.total_degree());
    return primitive_part(shift_variable(H, 0, static_cast<std::uint32_t>(std::min(af, ag))));
  }
  return detail::gcd_core(f, g);
}

/// gcd folded over a list.
inline MultiPoly poly_gcd(std::span<const MultiPoly> polys) {
  if (polys.empty()) throw ValidationError("poly_gcd of an empty list");
  MultiPoly g(polys[0].space());
  for (const auto& p : polys) {
    g = poly_gcd(g, p);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Squarefree decomposition

struct SquarefreeFactor {
  MultiPoly factor;
  int multiplicity = 0;
};

/// unit * prod factor^multiplicity == input; factors pairwise coprime,
/// squarefree, primitive, non-constant.
struct SquarefreeDecomposition {
  std::vector<SquarefreeFactor> factors;
  Rational unit;

  MultiPoly product(VarSpace space) const {
    MultiPoly p = MultiPoly::constant(space, unit);
    for (const auto& f : factors) p *= f.factor.pow(static_cast<unsigned>(f.multiplicity));
    return p;
  }
  /// Product of the factors whose multiplicity is at least `m`, each taken once.
  MultiPoly radical_of_multiplicity_at_least(VarSpace space, int m) const {
    MultiPoly p = MultiPoly::constant(space, 1);
    for (const auto& f : factors)
      if (f.multiplicity >= m) p *= f.factor;
    return p;
  }
};

namespace detail {

inline void yun(const MultiPoly& p, int v, std::vector<SquarefreeFactor>& out) {
  const MultiPoly dp = derivative(p, v);
  const MultiPoly a0 = poly_gcd(p, dp);
  MultiPoly b = divide_or_throw(p, a0, "yun");
  MultiPoly c = divide_or_throw(dp, a0, "yun");
  MultiPoly d = c - derivative(b, v);
  for (int i = 1; !b.is_constant(); ++i) {
    const MultiPoly a = poly_gcd(b, d);
    b = divide_or_throw(b, a, "yun");
    c = divide_or_throw(d, a, "yun");
    d = c - derivative(b, v);
    if (!a.is_constant()) out.push_back({a, i});
  }
}

inline void squarefree_rec(const MultiPoly& f, std::vector<SquarefreeFactor>& out) {
  if (f.is_constant()) return;
  const int v = main_variable(f);
  const MultiPoly c = content_in(f, v);
  const MultiPoly p = primitive_part(divide_or_throw(f, c, "squarefree"));
  squarefree_rec(c, out);
  yun(p, v, out);
}

}  // namespace detail

inline SquarefreeDecomposition squarefree_decompose(const MultiPoly& f) {
  if (f.is_zero()) throw ValidationError("squarefree decomposition of the zero polynomial");
  SquarefreeDecomposition sd;
  detail::squarefree_rec(primitive_part(f), sd.factors);
  MultiPoly prod = MultiPoly::constant(f.space(), 1);
  for (auto& fac : sd.factors) {
    fac.factor = primitive_part(fac.factor);
    prod *= fac.factor.pow(static_cast<unsigned>(fac.multiplicity));
  }
  const MultiPoly unit = divide_or_throw(f, prod, "squarefree unit");
  if (!unit.is_constant()) throw InternalError("squarefree decomposition lost a factor");
  sd.unit = unit.constant_value();
  return sd;
}

}  // namespace ffh
