#include "catch_amalgamated.hpp"

#include <map>
#include <random>

#include "ffh/identity.hpp"
#include "fixtures.hpp"

using namespace ffh;
using fx::t;

namespace {

// Dense bivariate integer polynomials, used as an independent expansion oracle.
using Dense = std::map<std::pair<int, int>, Integer>;

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return r;
}

Dense dense_add(Dense a, const Dense& b, long scale_b = 1) {
  for (const auto& [e, c] : b) a[e] += c * scale_b;
  return a;
}

Dense dense_scale(Dense a, long s) {
  for (auto& [e, c] : a) c *= s;
  return a;
}

bool dense_equals(Dense a, const MultiPoly& p) {
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  if (a.size() != p.size()) return false;
  for (const auto& tm : p.terms()) {
    auto it = a.find({static_cast<int>(tm.mono.exp[0]), static_cast<int>(tm.mono.exp[1])});
    if (it == a.end() || Rational(it->second) != tm.coef) return false;
  }
  return true;
}

FunctionFieldCurve planted_curve(std::mt19937_64& rng) {
  for (;;) {
    MultiPoly g = fx::random_poly(fx::T2, 1, rng, 3);
    MultiPoly a0 = fx::random_poly(fx::T2, 2, rng, 3);
    MultiPoly b0 = fx::random_poly(fx::T2, 2, rng, 3);
    if (g.is_constant() || b0.is_zero()) continue;
    try {
      return FunctionFieldCurve(a0 * g.pow(4), b0 * g.pow(6));
    } catch (const SingularCurve&) {
    }
  }
}

}  // namespace

TEST_CASE("discriminant examples") {
  const MultiPoly d1 = discriminant(t("0"), t("1"));
  CHECK(d1.is_constant());
  CHECK(d1.constant_value() == -432);
  const MultiPoly d2 = discriminant(t("-1"), t("0"));
  CHECK(d2.constant_value() == 64);

  CHECK_THROWS_AS(discriminant(t("0"), t("0")), SingularCurve);
  CHECK_THROWS_AS(discriminant(t("-3*T1^2"), t("2*T1^3")), SingularCurve);
  CHECK_THROWS_AS(FunctionFieldCurve(t("0"), t("0")), SingularCurve);
}

TEST_CASE("fixture discriminant matches an independent dense expansion") {
  const MultiPoly A = t("T1"), B = t("T2^4 - T2^3 - T1*T2");
  // A = T1, B = T2^4 - T2^3 - T1 T2 as dense maps keyed by (deg T1, deg T2)
  const Dense a{{{1, 0}, 1}};
  const Dense b{{{0, 4}, 1}, {{0, 3}, -1}, {{1, 1}, -1}};
  const Dense expected = dense_scale(dense_add(dense_scale(dense_mul(dense_mul(a, a), a), 4), dense_mul(b, b), 27), -16);
  CHECK(dense_equals(expected, discriminant(A, B)));

  const FunctionFieldCurve E = fx::fixture_curve();
  CHECK(E.discriminant() == discriminant(A, B));
  CHECK(E.discriminant().total_degree() == 8);
  CHECK(E.model().discriminant_degree() == 8);
}

TEST_CASE("curve construction checks") {
  CHECK_THROWS_AS(FunctionFieldCurve(MultiPoly::constant(VarSpace::affine(1), 1), MultiPoly::constant(VarSpace::affine(1), 2)),
                  ValidationError);
  CHECK_THROWS_AS(FunctionFieldCurve(fx::s("S1"), fx::s("S2")), ValidationError);
  CHECK_THROWS_AS(FunctionFieldCurve(t("T1"), parse_poly("T3", VarSpace::affine(3))), ValidationError);
}

TEST_CASE("minimality_reduce examples") {
  {
    const auto r = minimality_reduce(fx::fixture_curve());
    CHECK(r.u.is_one());
    CHECK(r.curve.A() == t("T1"));
    CHECK(r.curve.B() == t("T2^4 - T2^3 - T1*T2"));
    REQUIRE(r.curve.minimality_certificate().has_value());
    CHECK(is_minimal(fx::fixture_curve()));
  }
  {
    const FunctionFieldCurve E(t("T1^4"), t("T1^6"));
    CHECK_FALSE(is_minimal(E));
    const auto r = minimality_reduce(E);
    CHECK(r.u == t("T1"));
    CHECK(r.curve.A() == t("1"));
    CHECK(r.curve.B() == t("1"));
    CHECK(is_minimal(r.curve));
  }
  {
    const FunctionFieldCurve E(t("T1^5*T2^4"), t("T1^7*T2^6"));
    const auto r = minimality_reduce(E);
    CHECK(r.u == t("T1*T2"));
    CHECK(r.curve.A() == t("T1"));
    CHECK(r.curve.B() == t("T1"));
    // final multiplicities
    for (const MultiPoly* f : {&r.curve.A(), &r.curve.B()}) {
      const auto sd = squarefree_decompose(*f);
      REQUIRE(sd.factors.size() == 1);
      CHECK(sd.factors[0].factor == t("T1"));
      CHECK(sd.factors[0].multiplicity == 1);
    }
  }
  {
    // A = 0 has infinite order everywhere
    const auto r = minimality_reduce(FunctionFieldCurve(t("0"), t("T1^6*T2^7")));
    CHECK(r.u == t("T1*T2"));
    CHECK(r.curve.B() == t("T2"));
  }
  {
    // p^4 | A but p^6 does not divide B
    const auto r = minimality_reduce(FunctionFieldCurve(t("T1^4"), t("T1^5 + T2")));
    CHECK(r.u.is_one());
  }
}

TEST_CASE("minimality_reduce properties on planted curves") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 25; ++i) {
    const FunctionFieldCurve E = planted_curve(rng);
    const auto r = minimality_reduce(E);
    INFO(format_poly(E.A()) << " , " << format_poly(E.B()));
    CHECK_FALSE(r.u.is_constant());
    CHECK(r.curve.discriminant() * r.u.pow(12) == E.discriminant());
    CHECK(r.curve.A() * r.u.pow(4) == E.A());
    CHECK(r.curve.B() * r.u.pow(6) == E.B());
    const auto again = minimality_reduce(r.curve);
    CHECK(again.u.is_one());
    CHECK(is_minimal(r.curve));
  }
}

TEST_CASE("infinity_model k values") {
  {
    const FunctionFieldCurve E(t("2"), t("3"));
    const InfinityModel im = infinity_model(E);
    CHECK(im.k == 0);
    CHECK(im.a_numerator == E.A());
    CHECK(im.b_numerator == E.B());
    CHECK(im.a_s1_power == 0);
    CHECK(im.b_s1_power == 0);
    const WeierstrassModel m = im.model(), m0 = E.model();
    CHECK(m.a.num == m0.a.num);
    CHECK(m.a.den == m0.a.den);
    CHECK(m.b.num == m0.b.num);
    CHECK(m.b.den == m0.b.den);
  }
  CHECK(infinity_model(fx::fixture_curve()).k == 1);
  {
    const InfinityModel im = infinity_model(FunctionFieldCurve(t("T1^9"), t("T2^6 + 1")));
    CHECK(im.k == 3);
    CHECK(im.a_s1_power == 12);
    CHECK(im.b_s1_power == 18);
  }
  CHECK(infinity_model(FunctionFieldCurve(t("T1^4"), t("T2^7"))).k == 2);
}

TEST_CASE("transport to the infinity model stays on the curve") {
  std::mt19937_64 rng(41);
  std::vector<fx::ConstructedPoint> cases{{fx::fixture_curve(), fx::fixture_point()}};
  for (int i = 0; i < 10; ++i) cases.push_back(fx::random_point_on_curve(rng));
  for (const auto& [E, P] : cases) {
    const InfinityModel im = infinity_model(E);
    const ProjPoint Pp = transport_to_infinity_model(im, P);
    const WeierstrassModel Ep = im.model();
    const MultiPoly eq = curve_equation(Ep, Pp);
    INFO(format_point(P) << " -> " << format_point(Pp));
    CHECK(random_identity_check(eq, MultiPoly(eq.space()), 20, rng()).equal);
    CHECK(eq.is_zero());
    // the isomorphism commutes with doubling
    const ProjPoint lhs = transport_to_infinity_model(im, double_point(E.model(), P));
    CHECK(lhs == double_point(Ep, Pp));
  }
  // fixture transport by hand: k = 1
  const ProjPoint Pp = transport_to_infinity_model(infinity_model(fx::fixture_curve()), fx::fixture_point());
  CHECK(Pp == normalize_point(fx::s("S0*S1*S2"), fx::s("S0*S2^2"), fx::s("S1^3")));
}

TEST_CASE("validate_divisor_list examples") {
  const MultiPoly T1 = t("T1");
  {
    const FunctionFieldCurve E(t("0"), t("T1"));
    CHECK(E.discriminant() == t("-432*T1^2"));
    const auto v = validate_divisor_list(E, std::vector<MultiPoly>{T1});
    REQUIRE(v.factors.size() == 1);
    CHECK(v.factors[0].multiplicity == 2);
    CHECK(v.unit == -432);
  }
  {
    const FunctionFieldCurve E(t("0"), t("T1^2"));
    const auto v = validate_divisor_list(E, std::vector<MultiPoly>{t("-2*T1")});
    REQUIRE(v.factors.size() == 1);
    CHECK(v.factors[0].factor == T1);
    CHECK(v.factors[0].multiplicity == 4);
  }
  {
    const FunctionFieldCurve E(t("0"), t("T1"));
    try {
      validate_divisor_list(E, std::vector<MultiPoly>{t("T1 + 1")});
      FAIL("expected rejection");
    } catch (const ValidationError& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("-432*T1^2"));
    }
    CHECK_THROWS_AS(validate_divisor_list(E, std::vector<MultiPoly>{t("3")}), ValidationError);
    CHECK_THROWS_AS(validate_divisor_list(E, std::vector<MultiPoly>{}), ValidationError);
  }
  {
    // incomplete list: residual reported
    const FunctionFieldCurve E(t("0"), t("T1*T2"));
    try {
      validate_divisor_list(E, std::vector<MultiPoly>{t("T1")});
      FAIL("expected rejection");
    } catch (const ValidationError& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("residual quotient -432*T2^2"));
    }
  }
}
