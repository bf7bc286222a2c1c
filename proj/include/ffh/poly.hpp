#pragma once

// Sparse multivariate polynomials with rational coefficients.
//
// Terms are kept in strictly decreasing graded-lexicographic order with the
// first variable most significant; no stored coefficient is zero.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ffh/error.hpp"

namespace ffh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text of a rational: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline constexpr int kMaxVars = 8;

enum class VarKind : std::uint8_t { affine, homogeneous, param };

/// Names and counts the variables of a polynomial ring.
///   affine(n):      T1..Tn        (coordinates on the chart S0 != 0)
///   homogeneous(n): S0..Sn        (homogeneous coordinates of P^n)
///   param(k):       U0..U(k-1)    (parameters of a hypersurface parametrization)
struct VarSpace {
  VarKind kind = VarKind::affine;
  int count = 0;

  static VarSpace affine(int n) { return check({VarKind::affine, n}); }
  static VarSpace homogeneous(int n) { return check({VarKind::homogeneous, n + 1}); }
  static VarSpace param(int k) { return check({VarKind::param, k}); }

  /// n for T1..Tn and S0..Sn.
  int dimension() const { return kind == VarKind::homogeneous ? count - 1 : count; }

  char letter() const {
    switch (kind) {
      case VarKind::affine: return 'T';
      case VarKind::homogeneous: return 'S';
      case VarKind::param: return 'U';
    }
    return '?';
  }

  std::string variable_name(int i) const {
    return std::string(1, letter()) + std::to_string(kind == VarKind::affine ? i + 1 : i);
  }

  friend bool operator==(const VarSpace&, const VarSpace&) = default;

 private:
  static VarSpace check(VarSpace s) {
    if (s.count < 1 || s.count > kMaxVars)
      throw ValidationError("variable count " + std::to_string(s.count) + " outside 1.." +
                            std::to_string(kMaxVars));
    return s;
  }
};

struct Monomial {
  std::array<std::uint32_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  static Monomial one() { return {}; }
  static Monomial variable(int i, std::uint32_t e = 1) {
    Monomial m;
    m.exp[i] = e;
    m.degree = e;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] + b.exp[i];
    m.degree = a.degree + b.degree;
    return m;
  }
  bool divides(const Monomial& other) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }
  /// other / *this; requires divides(other).
  Monomial cofactor_in(const Monomial& other) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.exp[i] = other.exp[i] - exp[i];
    m.degree = other.degree - degree;
    return m;
  }
};

/// Graded lexicographic order, first variable most significant.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto e : m.exp) h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  MultiPoly() = default;
  explicit MultiPoly(VarSpace space) : space_(space) {}

  static MultiPoly constant(VarSpace space, const Rational& c) {
    MultiPoly p(space);
    if (c != 0) p.terms_.push_back({Monomial::one(), c});
    return p;
  }
  static MultiPoly variable(VarSpace space, int index, std::uint32_t power = 1) {
    if (index < 0 || index >= space.count) throw ValidationError("variable index out of range");
    MultiPoly p(space);
    p.terms_.push_back({Monomial::variable(index, power), Rational(1)});
    return p;
  }
  static MultiPoly term(VarSpace space, const Monomial& m, const Rational& c) {
    MultiPoly p(space);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  /// Sorts, merges equal monomials and drops zeros.
  static MultiPoly from_terms(VarSpace space, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    MultiPoly p(space);
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
    return p;
  }
  /// Trusts that `terms` are already strictly decreasing with nonzero coefficients.
  static MultiPoly from_canonical(VarSpace space, std::vector<Term> terms) {
    MultiPoly p(space);
    p.terms_ = std::move(terms);
    return p;
  }

  const VarSpace& space() const { return space_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.degree == 0 && terms_[0].coef == 1; }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree); }

  int degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.exp[var]));
    return d;
  }

  /// Lowest total degree of a term; -1 for zero.
  int low_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.back().mono.degree);
  }

  bool is_homogeneous() const { return terms_.empty() || low_degree() == total_degree(); }

  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coefficient() const { return terms_.front().coef; }

  Rational constant_value() const {
    if (terms_.empty() || terms_.back().mono.degree != 0) return Rational(0);
    return terms_.back().coef;
  }

  /// Exponentwise minimum over all terms.
  Monomial monomial_content() const {
    Monomial m;
    if (terms_.empty()) return m;
    m = terms_.front().mono;
    for (const auto& t : terms_)
      for (int i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(m.exp[i], t.mono.exp[i]);
    m.degree = 0;
    for (auto e : m.exp) m.degree += e;
    return m;
  }

  bool involves(int var) const {
    for (const auto& t : terms_)
      if (t.mono.exp[var] != 0) return true;
    return false;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  MultiPoly& operator+=(const MultiPoly& b) { return *this = merge(*this, b, false); }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = merge(*this, b, true); }

  friend MultiPoly operator*(const MultiPoly& a, const Rational& c) {
    if (c == 0) return MultiPoly(a.space_);
    MultiPoly r = a;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }
  friend MultiPoly operator*(const Rational& c, const MultiPoly& a) { return a * c; }

  /// Multiplies by c * m; order is preserved since grlex is a monomial order.
  MultiPoly times_term(const Monomial& m, const Rational& c) const {
    if (c == 0) return MultiPoly(space_);
    MultiPoly r(space_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    same_space(a, b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.space_);
    const MultiPoly& small = a.size() <= b.size() ? a : b;
    const MultiPoly& big = a.size() <= b.size() ? b : a;
    if (small.size() == 1) return big.times_term(small.terms_[0].mono, small.terms_[0].coef);

    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(small.size() * big.size(), 1u << 22));
    Rational tmp;
    for (const auto& s : small.terms_) {
      for (const auto& t : big.terms_) {
        mpq_mul(tmp.get_mpq_t(), s.coef.get_mpq_t(), t.coef.get_mpq_t());
        auto [it, inserted] = acc.try_emplace(s.mono * t.mono);
        if (inserted)
          mpq_swap(it->second.get_mpq_t(), tmp.get_mpq_t());
        else
          mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), tmp.get_mpq_t());
      }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
    return from_canonical(a.space_, std::move(out));
  }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(space_, 1);
    MultiPoly base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e != 0) base *= base;
    }
    return result;
  }

  /// Evaluates at rational values, one per variable.
  Rational evaluate(std::span<const Rational> values) const {
    if (static_cast<int>(values.size()) != space_.count) throw ValidationError("evaluate: arity mismatch");
    std::vector<std::vector<Rational>> powers(space_.count);
    for (int i = 0; i < space_.count; ++i) {
      int d = degree_in(i);
      powers[i].resize(std::max(d, 0) + 1);
      powers[i][0] = 1;
      for (int k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * values[i];
    }
    Rational sum = 0, prod;
    for (const auto& t : terms_) {
      prod = t.coef;
      for (int i = 0; i < space_.count; ++i)
        if (t.mono.exp[i] != 0) prod *= powers[i][t.mono.exp[i]];
      sum += prod;
    }
    return sum;
  }

  /// Rewrites the polynomial in another variable space with identical exponent vectors.
  MultiPoly relabel(VarSpace target) const {
    for (const auto& t : terms_)
      for (int i = target.count; i < kMaxVars; ++i)
        if (t.mono.exp[i] != 0) throw ValidationError("relabel: variable does not exist in target space");
    MultiPoly r = *this;
    r.space_ = target;
    return r;
  }

  static void same_space(const MultiPoly& a, const MultiPoly& b) {
    if (!(a.space_ == b.space_)) throw ValidationError("polynomials live in different variable spaces");
  }

 private:
  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    same_space(a, b);
    MultiPoly r(a.space_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
        r.terms_.push_back({b.terms_[j].mono, subtract ? Rational(-b.terms_[j].coef) : b.terms_[j].coef});
        ++j;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coef - b.terms_[j].coef)
                              : Rational(a.terms_[i].coef + b.terms_[j].coef);
        if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarSpace space_;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Printing

inline std::string format_monomial(const VarSpace& space, const Monomial& m) {
  std::string s;
  for (int i = 0; i < space.count; ++i) {
    if (m.exp[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += space.variable_name(i);
    if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
  }
  return s;
}

/// Graded-lex order, explicit '*', no unary '+'.
inline std::string format_poly(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coef < 0;
    const Rational mag = abs(t.coef);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const std::string mono = format_monomial(p.space(), t.mono);
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ring maps

/// Ring map sending variable i of f's space to images[i]. All images must share
/// one variable space, which becomes the space of the result.
inline MultiPoly substitute(const MultiPoly& f, std::span<const MultiPoly> images) {
  if (static_cast<int>(images.size()) != f.space().count)
    throw ValidationError("substitute: expected " + std::to_string(f.space().count) + " images, got " +
                          std::to_string(images.size()));
  const VarSpace target = images[0].space();
  for (const auto& im : images)
    if (!(im.space() == target)) throw ValidationError("substitute: images live in different spaces");

  const int nv = f.space().count;
  std::vector<int> general;
  for (int i = 0; i < nv; ++i)
    if (images[i].size() > 1) general.push_back(i);

  // Terms of f grouped by their exponents on variables with multi-term images;
  // the monomial images are folded in directly.
  std::map<std::vector<std::uint32_t>, std::vector<MultiPoly::Term>> groups;
  for (const auto& t : f.terms()) {
    Rational c = t.coef;
    Monomial m;
    bool vanishes = false;
    for (int i = 0; i < nv && !vanishes; ++i) {
      const auto e = t.mono.exp[i];
      if (e == 0 || images[i].size() > 1) continue;
      if (images[i].is_zero()) {
        vanishes = true;
        break;
      }
      const auto& it = images[i].terms()[0];
      Rational ce;
      mpz_pow_ui(ce.get_num_mpz_t(), it.coef.get_num_mpz_t(), e);
      mpz_pow_ui(ce.get_den_mpz_t(), it.coef.get_den_mpz_t(), e);
      c *= ce;
      for (int k = 0; k < kMaxVars; ++k) m.exp[k] += it.mono.exp[k] * e;
      m.degree += it.mono.degree * e;
    }
    if (vanishes) continue;
    std::vector<std::uint32_t> key;
    key.reserve(general.size());
    for (int g : general) key.push_back(t.mono.exp[g]);
    groups[key].push_back({m, c});
  }

  std::vector<std::vector<MultiPoly>> power_cache(general.size());
  auto power = [&](std::size_t gi, std::uint32_t e) -> const MultiPoly& {
    auto& cache = power_cache[gi];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[general[gi]]);
    return cache[e];
  };

  MultiPoly result(target);
  for (auto& [key, terms] : groups) {
    MultiPoly part = MultiPoly::from_terms(target, std::move(terms));
    for (std::size_t gi = 0; gi < general.size(); ++gi)
      if (key[gi] != 0) part *= power(gi, key[gi]);
    result += part;
  }
  return result;
}

inline MultiPoly substitute(const MultiPoly& f, std::initializer_list<MultiPoly> images) {
  return substitute(f, std::span<const MultiPoly>(images.begin(), images.size()));
}

/// T-space polynomial of total degree <= target_degree to a form of exactly that
/// degree in S0..Sn, with T_i = S_i / S_0.
inline MultiPoly homogenize(const MultiPoly& f, int target_degree) {
  if (f.space().kind != VarKind::affine) throw ValidationError("homogenize: input must be in T-space");
  if (target_degree < f.total_degree())
    throw ValidationError("homogenize: target degree " + std::to_string(target_degree) +
                          " below total degree " + std::to_string(f.total_degree()));
  if (f.space().count + 1 > kMaxVars) throw ValidationError("homogenize: too many variables");
  const VarSpace target = VarSpace::homogeneous(f.space().count);
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    m.exp[0] = static_cast<std::uint32_t>(target_degree) - t.mono.degree;
    for (int i = 0; i < f.space().count; ++i) m.exp[i + 1] = t.mono.exp[i];
    m.degree = static_cast<std::uint32_t>(target_degree);
    terms.push_back({m, t.coef});
  }
  return MultiPoly::from_terms(target, std::move(terms));
}

/// Sets S0 = 1 and renames S_i to T_i.
inline MultiPoly dehomogenize(const MultiPoly& F) {
  if (F.space().kind != VarKind::homogeneous) throw ValidationError("dehomogenize: input must be in S-space");
  const VarSpace target = VarSpace::affine(F.space().count - 1);
  std::vector<MultiPoly::Term> terms;
  terms.reserve(F.size());
  for (const auto& t : F.terms()) {
    Monomial m;
    for (int i = 1; i < F.space().count; ++i) m.exp[i - 1] = t.mono.exp[i];
    m.degree = t.mono.degree - t.mono.exp[0];
    terms.push_back({m, t.coef});
  }
  return MultiPoly::from_terms(target, std::move(terms));
}

/// Sets variable `var` to 1, keeping the variable space.
inline MultiPoly set_variable_to_one(const MultiPoly& f, int var) {
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.degree -= m.exp[var];
    m.exp[var] = 0;
    terms.push_back({m, t.coef});
  }
  return MultiPoly::from_terms(f.space(), std::move(terms));
}

/// Inverse of set_variable_to_one for a polynomial free of `var`: pads every
/// term with powers of `var` up to total degree `degree`.
inline MultiPoly homogenize_with(const MultiPoly& f, int var, int degree) {
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    if (static_cast<int>(t.mono.degree) > degree) throw ValidationError("homogenize_with: degree too small");
    Monomial m = t.mono;
    const auto pad = static_cast<std::uint32_t>(degree) - m.degree;
    m.exp[var] += pad;
    m.degree += pad;
    terms.push_back({m, t.coef});
  }
  return MultiPoly::from_terms(f.space(), std::move(terms));
}

/// Multiplies by var^e.
inline MultiPoly shift_variable(const MultiPoly& f, int var, std::uint32_t e) {
  return f.times_term(Monomial::variable(var, e), Rational(1));
}

}  // namespace ffh
