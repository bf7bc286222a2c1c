#include "catch_amalgamated.hpp"

#include <random>

#include "ffh/specialization.hpp"
#include "fixtures.hpp"

using namespace ffh;
using fx::s;
using fx::t;

namespace {

QPoint qp(long x, long y) { return {false, Rational(x), Rational(y)}; }

// Case c: y^2 = x^3 + (T1^4 + 1) x - T2^3 - (T1^4 + 1) T2 with P = (T2, 0).
FunctionFieldCurve case_c_curve() { return FunctionFieldCurve(t("T1^4 + 1"), t("-T2^3 - (T1^4 + 1)*T2")); }
ProjPoint case_c_point() { return affine_point(t("T2"), t("0")); }

// Case a: y^2 = x^3 + T2^2 x - 1 with P = [S2 S0^2 : S0^3 : S2^3].
FunctionFieldCurve case_a_curve() { return FunctionFieldCurve(t("T2^2"), t("-1")); }
ProjPoint case_a_point() { return normalize_point(s("S2*S0^2"), s("S0^3"), s("S2^3")); }

std::vector<RationalPointPn> good_points(const FunctionFieldCurve& E, const ProjPoint& P, int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-9, 9), c0(1, 9);
  std::vector<RationalPointPn> out;
  while (static_cast<int>(out.size()) < count) {
    const RationalPointPn tp = RationalPointPn::make({c0(rng), c(rng), c(rng)});
    const SpecializedCurve Et = specialize_curve(E, tp);
    if (Et.fiber != FiberClass::nonsingular) continue;
    const SpecializedPoint sp = specialize_point(P, tp);
    if (sp.indeterminate) continue;
    out.push_back(tp);
  }
  return out;
}

}  // namespace

TEST_CASE("RationalPointPn normalization") {
  const RationalPointPn a = RationalPointPn::make({-2, 4, 6});
  CHECK(a.str() == "[1:-2:-3]");
  CHECK(a.naive_height() == 3);
  CHECK(RationalPointPn::make({Rational(1, 2), Rational(1, 3), Rational(0)}) == RationalPointPn::make({3, 2, 0}));
  CHECK(RationalPointPn::make({0, -3, 6}).str() == "[0:1:-2]");
  CHECK_THROWS_AS(RationalPointPn::make({0, 0, 0}), ValidationError);
}

TEST_CASE("specialize_point examples") {
  const ProjPoint P = fx::fixture_point();
  const SpecializedPoint a = specialize_point(P, RationalPointPn::make({1, 2, 3}));
  CHECK_FALSE(a.indeterminate);
  CHECK(a.str() == "[3:9:1]");
  CHECK(a.affine() == qp(3, 9));
  CHECK(SpecializedCurve::make(Rational(2), Rational(48)).contains(a.affine()));

  CHECK(specialize_point(P, RationalPointPn::make({0, 1, 0})).indeterminate);
  CHECK_THROWS_AS(specialize_point(P, RationalPointPn::make({0, 1, 0})).affine(), ValidationError);

  for (const auto& tp : {RationalPointPn::make({1, 2, 3}), RationalPointPn::make({0, 1, 0}), RationalPointPn::make({5, -1, 7})}) {
    const SpecializedPoint o = specialize_point(ProjPoint::infinity(fx::S2), tp);
    CHECK(o.str() == "[0:1:0]");
    CHECK(o.affine().infinity);
  }
  CHECK_THROWS_AS(specialize_point(P, RationalPointPn::make({1, 2})), ValidationError);
}

TEST_CASE("specialize_curve examples") {
  const SpecializedCurve Et = specialize_curve(fx::fixture_curve(), RationalPointPn::make({1, 2, 3}));
  CHECK(Et.a == 2);
  CHECK(Et.b == 48);
  CHECK(Et.disc == -16 * (32 + 27 * 2304));
  CHECK(Et.disc == -995840);
  CHECK(Et.fiber == FiberClass::nonsingular);

  const SpecializedCurve cusp = specialize_curve(FunctionFieldCurve(t("0"), t("T1")), RationalPointPn::make({1, 0, 5}));
  CHECK(cusp.fiber == FiberClass::cusp);
  CHECK(cusp.singular_point() == qp(0, 0));

  const SpecializedCurve node = SpecializedCurve::make(Rational(-3), Rational(2));
  CHECK(node.disc == 0);
  CHECK(node.fiber == FiberClass::node);
  CHECK(node.singular_point() == qp(1, 0));

  CHECK_THROWS_AS(specialize_curve(fx::fixture_curve(), RationalPointPn::make({0, 1, 2})), ValidationError);
}

TEST_CASE("is_singular_specialized_point examples") {
  CHECK(is_singular_specialized_point(SpecializedCurve::make(Rational(0), Rational(0)), qp(0, 0)));
  CHECK(is_singular_specialized_point(SpecializedCurve::make(Rational(-3), Rational(2)), qp(1, 0)));
  CHECK_FALSE(is_singular_specialized_point(SpecializedCurve::make(Rational(-3), Rational(2)), qp(-2, 0)));
  CHECK_FALSE(is_singular_specialized_point(SpecializedCurve::make(Rational(2), Rational(48)), qp(3, 9)));
  CHECK_THROWS_AS(is_singular_specialized_point(SpecializedCurve::make(Rational(2), Rational(48)), qp(3, 8)),
                  ValidationError);
}

TEST_CASE("dl_check examples") {
  CHECK(dl_check(fx::fixture_curve(), fx::fixture_point(), RationalPointPn::make({1, 2, 3})));

  const FunctionFieldCurve F(t("T2"), t("-T1^3 - T2*T1"));
  const RationalPointPn tp = RationalPointPn::make({1, 2, 3});
  REQUIRE(specialize_curve(F, tp).fiber == FiberClass::nonsingular);
  const ProjPoint two = affine_point(t("T1"), t("0"));
  CHECK(specialize_point(two, tp).affine() == qp(2, 0));
  CHECK(dl_check(F, two, tp));
  CHECK(specialize_point(double_point(F.model(), two), tp).affine().infinity);

  CHECK_THROWS_AS(dl_check(fx::cusp_curve(), fx::cusp_point(), RationalPointPn::make({1, 0, 1})), ValidationError);
  CHECK_THROWS_AS(dl_check(fx::fixture_curve(), fx::fixture_point(), RationalPointPn::make({0, 1, 0})), ValidationError);
}

TEST_CASE("dl_check holds at sampled good points") {
  std::mt19937_64 rng(50);
  std::vector<fx::ConstructedPoint> cases{{fx::fixture_curve(), fx::fixture_point()}};
  for (int i = 0; i < 3; ++i) cases.push_back(fx::random_point_on_curve(rng));
  for (const auto& [E, P] : cases)
    for (const auto& tp : good_points(E, P, 15, rng)) {
      const QPoint pt = specialize_point(P, tp).affine();
      if (is_singular_specialized_point(specialize_curve(E, tp), pt)) continue;
      INFO(tp.str());
      CHECK(dl_check(E, P, tp));
    }
}

TEST_CASE("specialization is a homomorphism on samples") {
  std::mt19937_64 rng(51);
  const FunctionFieldCurve E = fx::fixture_curve();
  const WeierstrassModel M = E.model();
  const ProjPoint P = fx::fixture_point(), Q = double_point(M, P), R = add(M, P, Q);
  for (const auto& tp : good_points(E, P, 30, rng)) {
    const SpecializedCurve Et = specialize_curve(E, tp);
    const SpecializedPoint q = specialize_point(Q, tp), r = specialize_point(R, tp);
    if (q.indeterminate || r.indeterminate) continue;
    const QPoint pt = specialize_point(P, tp).affine();
    INFO(tp.str());
    CHECK(q_add(Et, pt, q.affine()) == r.affine());
    CHECK(q_double(Et, pt) == q.affine());
  }
}

TEST_CASE("nonsingular_multiple examples") {
  {
    const FunctionFieldCurve E = fx::fixture_curve();
    const MultiPoly d = primitive_part(E.discriminant());
    const auto divs = validate_divisor_list(E, std::vector<MultiPoly>{d});
    const auto r = nonsingular_multiple(E, fx::fixture_point(), divs);
    CHECK(r.N == 1);
    CHECK(nonsingular_multiple(E, ProjPoint::infinity(fx::S2), divs).N == 1);
  }
  {
    const FunctionFieldCurve E = fx::cusp_curve();
    const auto divs = validate_divisor_list(E, std::vector<MultiPoly>{t("T1")});
    CHECK(reduction_is_singular(E, fx::cusp_point(), t("T1")));
    const auto r = nonsingular_multiple(E, fx::cusp_point(), divs);
    CHECK(r.N == 3);
    CHECK(r.per_divisor == std::vector<long>{3});
    CHECK_FALSE(reduction_is_singular(E, scalar_multiply(E.model(), 3, fx::cusp_point()), t("T1")));
    CHECK(nonsingular_multiple(E, ProjPoint::infinity(fx::S2), divs).N == 1);
    CHECK_THROWS_AS(nonsingular_multiple(E, fx::cusp_point(), divs, 2), CapExceeded);
  }
  {
    const FunctionFieldCurve E(t("T1^4"), t("T1^6 + T1^6*T2"));
    const auto divs = validate_divisor_list(E, std::vector<MultiPoly>{t("T1"), t("4 + 27*(1 + T2)^2")});
    CHECK_THROWS_AS(nonsingular_multiple(E, ProjPoint::infinity(fx::S2), divs), ValidationError);
  }
}

TEST_CASE("classify_infinity examples") {
  const RationalPointPn inf = RationalPointPn::make({0, 1, 0});
  {
    const auto c = classify_infinity(fx::fixture_curve(), fx::fixture_point(), inf);
    CHECK(c.which == InfinityCase::b);
    CHECK(c.transported == normalize_point(s("S0*S1*S2"), s("S0*S2^2"), s("S1^3")));
    CHECK(c.value.str() == "[0:0:1]");
    REQUIRE(c.fiber.has_value());
    CHECK(c.fiber->fiber == FiberClass::cusp);
    CHECK(c.fiber->a == 0);
    CHECK(c.fiber->b == 0);
  }
  CHECK_THROWS_AS(classify_infinity(fx::fixture_curve(), fx::fixture_point(), RationalPointPn::make({0, 1, 1})),
                  ValidationError);
  CHECK_THROWS_AS(classify_infinity(fx::fixture_curve(), fx::fixture_point(), RationalPointPn::make({1, 2, 3})),
                  ValidationError);
  CHECK_THROWS_AS(classify_infinity(fx::fixture_curve(), fx::fixture_point(), RationalPointPn::make({0, 0, 1})),
                  ValidationError);
  {
    const auto c = classify_infinity(case_c_curve(), case_c_point(), inf);
    CHECK(c.which == InfinityCase::c);
    REQUIRE(c.fiber.has_value());
    CHECK(c.fiber->fiber == FiberClass::nonsingular);
    const QPoint p = c.value.affine();
    CHECK(p.y == 0);
    CHECK(q_double(*c.fiber, p).infinity);
  }
  {
    const auto c = classify_infinity(case_a_curve(), case_a_point(), inf);
    CHECK(c.which == InfinityCase::a);
    CHECK(c.value.indeterminate);
  }
}

TEST_CASE("trichotomy is exhaustive and stable under scaling") {
  struct Fixture {
    FunctionFieldCurve E;
    ProjPoint P;
    InfinityCase expected;
  };
  const std::vector<Fixture> fixtures{{fx::fixture_curve(), fx::fixture_point(), InfinityCase::b},
                                      {case_c_curve(), case_c_point(), InfinityCase::c},
                                      {case_a_curve(), case_a_point(), InfinityCase::a}};
  for (const auto& f : fixtures) {
    int indeterminate = 0;
    for (long c = -6; c <= 6; ++c)
      for (long k : {1L, 2L, -3L}) {
        const RationalPointPn tp = RationalPointPn::make({0, k, k * c});
        if (!specialize_point(f.P, tp).indeterminate) continue;
        ++indeterminate;
        const auto cls = classify_infinity(f.E, f.P, tp);
        CHECK(cls.which == classify_infinity(f.E, f.P, RationalPointPn::make({0, 1, c})).which);
      }
    CHECK(indeterminate > 0);
    CHECK(classify_infinity(f.E, f.P, RationalPointPn::make({0, 7, 0})).which == f.expected);
  }
}

TEST_CASE("q_canonical_height examples") {
  const SpecializedCurve Et = SpecializedCurve::make(Rational(2), Rational(48));
  const double tol = 1e-3;
  const QHeightEstimate h = q_canonical_height(Et, qp(3, 9), tol);
  CHECK(h.value > 0.9);
  CHECK(h.value < 1.0);
  const std::size_t k = h.estimates.size();
  REQUIRE(k >= 3);
  CHECK(std::fabs(h.estimates[k - 1] - h.estimates[k - 2]) < tol / 2);
  CHECK(std::fabs(h.estimates[k - 2] - h.estimates[k - 3]) < tol / 2);

  const QHeightEstimate h2 = q_canonical_height(Et, q_double(Et, qp(3, 9)), tol);
  CHECK(std::fabs(h2.value - 4 * h.value) <= 5 * tol);
  CHECK(h2.value / h.value >= 4 - 4 * tol);
  CHECK(h2.value / h.value <= 4 + 4 * tol);

  const SpecializedCurve tors = SpecializedCurve::make(Rational(-1), Rational(0));
  const QHeightEstimate z = q_canonical_height(tors, qp(0, 0), tol);
  CHECK(z.torsion);
  CHECK(z.torsion_order == 2);
  CHECK(z.value == 0);
  // y^2 = x^3 + 1: (2, 3) has order 6
  CHECK(q_canonical_height(SpecializedCurve::make(Rational(0), Rational(1)), qp(2, 3), tol).torsion_order == 6);

  CHECK_THROWS_AS(q_canonical_height(Et, qp(3, 9), 0), ValidationError);
  CHECK_THROWS_AS(q_canonical_height(Et, qp(3, 8), tol), ValidationError);
  CHECK_THROWS_AS(q_canonical_height(SpecializedCurve::make(Rational(-3), Rational(2)), qp(-2, 0), tol), ValidationError);
  CHECK_THROWS_AS(q_canonical_height(Et, qp(3, 9), 1e-12, 3), CapExceeded);
}

TEST_CASE("q_canonical_height is quadratic on fixture fibers") {
  std::mt19937_64 rng(52);
  const FunctionFieldCurve E = fx::fixture_curve();
  const double tol = 1e-3;
  int checked = 0;
  for (const auto& tp : good_points(E, fx::fixture_point(), 12, rng)) {
    const SpecializedCurve Et = specialize_curve(E, tp);
    const QPoint p = specialize_point(fx::fixture_point(), tp).affine();
    if (q_torsion_order(Et, p)) continue;
    const QHeightEstimate a = q_canonical_height(Et, p, tol);
    const QHeightEstimate b = q_canonical_height(Et, q_double(Et, p), tol);
    INFO(tp.str());
    CHECK(std::fabs(b.value - 4 * a.value) <= 5 * tol);
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("line_points enumeration") {
  const RationalHypersurface L = hyperplane(s("S2 - S0 - S1"));
  const auto zero = line_points(L, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].str() == "[1:0:1]");
  const auto one = line_points(L, 1);
  REQUIRE(one.size() == 3);
  CHECK(one[0].str() == "[1:-1:0]");
  const auto two = line_points(L, 2);
  // s in {0, +-1, +-2, +-1/2}
  CHECK(two.size() == 7);
  for (std::size_t i = 1; i < two.size(); ++i) CHECK(two[i - 1].naive_height() <= two[i].naive_height());
  CHECK_THROWS_AS(line_points(conic(s("S0*S2 - S1^2")), 3), ValidationError);
}

TEST_CASE("injectivity_report on the fixture line") {
  const FunctionFieldCurve E = fx::fixture_curve();
  const RationalHypersurface L = hyperplane(s("S2 - S0 - S1"));
  const double tol = 1e-3;
  const InjectivityReport rep = injectivity_report(E, {fx::fixture_point()}, {}, L, 4, tol);
  const auto& sm = rep.summary;
  CHECK(sm.dependent == 0);
  CHECK(sm.processed == sm.independent + sm.torsion_collisions + sm.dependent + sm.inconclusive);
  CHECK(static_cast<long>(rep.rows.size()) == sm.processed + sm.skipped);
  CHECK(sm.torsion_collisions == 1);
  CHECK(sm.inconclusive == 0);
  bool saw_collision = false;
  for (const auto& row : rep.rows) {
    if (row.verdict == Verdict::independent) {
      REQUIRE(row.hhat.size() == 1);
      CHECK(row.hhat[0] > 2 * tol);
      CHECK(row.det - row.det_radius > 0);
    }
    if (row.verdict == Verdict::torsion_collision) {
      saw_collision = true;
      CHECK(row.t.str() == "[1:-1:0]");
      const SpecializedCurve Et = specialize_curve(E, row.t);
      const QPoint p = specialize_point(fx::fixture_point(), row.t).affine();
      CHECK(q_multiply(Et, 2, p).infinity);
    }
    if (row.verdict == Verdict::skipped) {
      CHECK_FALSE(row.note.empty());
    }
  }
  CHECK(saw_collision);

  const InjectivityReport none = injectivity_report(E, {}, {}, L, 2, tol);
  CHECK(none.summary.torsion_collisions == 0);
  CHECK(none.summary.dependent == 0);
  CHECK(none.summary.processed == none.summary.independent);

  const InjectivityReport zero = injectivity_report(E, {fx::fixture_point()}, {}, L, 0, tol);
  REQUIRE(zero.rows.size() == 1);
  CHECK(zero.rows[0].t.str() == "[1:0:1]");
  CHECK(zero.rows[0].verdict == Verdict::skipped);
  CHECK(zero.rows[0].note == "singular fiber");
}

TEST_CASE("injectivity_report checks claimed torsion") {
  const RationalHypersurface L = hyperplane(s("S2 - S0 - S1"));
  CHECK_THROWS_AS(injectivity_report(fx::fixture_curve(), {}, {fx::fixture_point()}, L, 2, 1e-3), ValidationError);
  const InjectivityReport rep = injectivity_report(fx::cusp_curve(), {}, {fx::cusp_point()}, L, 3, 1e-3);
  CHECK(rep.summary.dependent == 0);
  for (const auto& row : rep.rows)
    if (row.verdict == Verdict::torsion_collision) {
      CHECK_THAT(row.note, Catch::Matchers::ContainsSubstring("specializes to O"));
    }
}

TEST_CASE("dependent verdicts carry verified relations") {
  const SpecializedCurve Et = SpecializedCurve::make(Rational(2), Rational(48));
  const QPoint p = qp(3, 9), p2 = q_double(Et, p);
  const auto rel = detail::find_relation(Et, {p, p2}, kRelationSearchBound);
  REQUIRE(rel.has_value());
  QPoint sum = QPoint::origin();
  sum = q_add(Et, q_multiply(Et, (*rel)[0], p), q_multiply(Et, (*rel)[1], p2));
  CHECK(q_torsion_order(Et, sum) != 0);
  CHECK(((*rel)[0] != 0 || (*rel)[1] != 0));
  CHECK_FALSE(detail::find_relation(Et, {p}, kRelationSearchBound).has_value());
}
