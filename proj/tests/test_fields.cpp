#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "orbvol/fields.hpp"

using namespace orbvol;

namespace {

FieldPair pair_for(const char* k, const char* l) {
    return FieldPair::outer(builtin_table().by_label(k), builtin_table().by_label(l));
}

TowerElement tower_rat(const QuadElem& alpha, const BigRat& a, const BigRat& b, const BigRat& c,
                       const BigRat& d) {
    TowerElement t;
    t.alpha = alpha;
    t.u = QuadElem(a, b, alpha.m);
    t.v = QuadElem(c, d, alpha.m);
    return t;
}

}  // namespace

TEST_CASE("field table parsing") {
    FieldTable t = parse_field_table_string(
        "k0\t2\t2\t0\t5\t1\t-5,0,1\n"
        "l0\t4\t2\t1\t275\t1\t-1,2,0,-1,1\n");
    CHECK(t.by_label("k0").degree == 2);
    CHECK(t.by_label("k0").disc == 5);
    CHECK(t.by_label("k0").class_number == 1);
    CHECK(t.by_label("l0").s2 == 1);
    CHECK(t.find("nope") == nullptr);
    CHECK_THROWS_WITH_AS(t.by_label("nope"), doctest::Contains("available"),
                         std::invalid_argument);

    // invariant breach: s1 + 2 s2 != degree, reported with the line number
    CHECK_THROWS_WITH_AS(parse_field_table_string("bad\t2\t1\t1\t5\t1\t-5,0,1\n"),
                         doctest::Contains("line 1"), std::invalid_argument);
    // malformed line
    CHECK_THROWS_AS(parse_field_table_string("short\t2\t2\n"), std::invalid_argument);
    // real-root count mismatch: x^2+3 has no real roots but s1 = 2
    CHECK_THROWS_AS(parse_field_table_string("bad\t2\t2\t0\t12\t1\t3,0,1\n"),
                    std::invalid_argument);
}

TEST_CASE("builtin table validates") {
    const FieldTable& t = builtin_table();
    CHECK(t.records().size() >= 25);
    for (const char* label :
         {"Q", "k0", "l0", "l1", "lm4", "l400", "l475", "l775", "q14641", "l725a"})
        CHECK(t.find(label) != nullptr);
    CHECK(t.by_label("l0").disc == 275);
    CHECK(t.by_label("l0").fund_units.size() == 2);
    CHECK(t.by_label("l475").tower.has_value());
    CHECK(t.by_label("l725a").poly == std::nullopt);
    CHECK(t.by_label("l725a").over_label == std::string("k725"));
}

TEST_CASE("real embeddings") {
    const FieldTable& t = builtin_table();
    FieldTable tmp = parse_field_table_string("f\t2\t2\t0\t5\t1\t-5,0,1\n");
    auto roots = real_embeddings(tmp.by_label("f"), 1e-12);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-11));
    CHECK(roots[1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-11));

    auto quartic = real_embeddings(t.by_label("l0"), 1e-10);
    CHECK(quartic.size() == 2);

    CHECK(real_embeddings(t.by_label("l1")).empty());

    // x^2 - 5 evaluated at the roots vanishes
    for (double x : roots) CHECK(std::fabs(x * x - 5.0) < 1e-9);
}

TEST_CASE("splitting data for fields") {
    const FieldTable& t = builtin_table();
    CHECK(t.by_label("Q").splitting_at(7) == SplittingType{{{1, 1}}});
    CHECK(t.by_label("k0").splitting_at(11) == SplittingType{{{1, 1}, {1, 1}}});
    CHECK(t.by_label("k0").splitting_at(2) == SplittingType{{{2, 1}}});
    CHECK(t.by_label("k0").splitting_at(5) == SplittingType{{{1, 2}}});
    CHECK(t.by_label("l1").splitting_at(3) == SplittingType{{{1, 2}}});
    // the 775 field needs its split-override at 2 (the polynomial has index 2^8)
    CHECK(t.by_label("l775").splitting_at(2) == SplittingType{{{2, 1}, {2, 1}}});
    // quartic splitting through the polynomial
    CHECK(t.by_label("l0").splitting_at(2) == SplittingType{{{4, 1}}});
    CHECK(t.by_label("l0").splitting_at(11).degree_sum() == 4);
}

TEST_CASE("tower arithmetic and norms") {
    const NumberField& l0 = builtin_table().by_label("l0");
    REQUIRE(l0.tower.has_value());
    QuadElem alpha = l0.tower->alpha;  // 3 + 2 sqrt5
    CHECK(alpha.sign_at(true) == 1);
    CHECK(alpha.sign_at(false) == -1);

    const TowerElement& t1 = l0.fund_units[0];
    const TowerElement& t2 = l0.fund_units[1];
    // tau1 tau2 = (1 - alpha)/4 = -(1 + sqrt5)/2
    QuadElem n1 = tower_norm(t1);
    CHECK(n1 == QuadElem(BigRat(-1, 2), BigRat(-1, 2), 5));
    CHECK(tower_norm(t2) == n1);

    // identity and pure radical
    TowerElement one = TowerElement::one(alpha);
    CHECK(tower_norm(one) == QuadElem(BigRat(1), BigRat(0), 5));
    TowerElement rad = tower_rat(alpha, BigRat(0), BigRat(0), BigRat(1), BigRat(0));
    QuadElem minus_alpha = tower_norm(rad);
    CHECK(minus_alpha == QuadElem(BigRat(-3), BigRat(-2), 5));

    // multiplicativity on pseudo-random exact elements
    std::mt19937_64 rng(12345);
    auto rnd = [&] {
        auto r = [&] { return BigRat(static_cast<long>(rng() % 19) - 9,
                                     static_cast<long>(rng() % 6) + 1); };
        return tower_rat(alpha, r(), r(), r(), r());
    };
    for (int i = 0; i < 200; ++i) {
        TowerElement x = rnd(), y = rnd();
        QuadElem lhs = tower_norm(x * y);
        QuadElem rhs = tower_norm(x) * tower_norm(y);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exact signs of tower elements") {
    const NumberField& l0 = builtin_table().by_label("l0");
    const TowerElement& t1 = l0.fund_units[0];  // (1 + sqrt alpha)/2 ~ 1.866
    const TowerElement& t2 = l0.fund_units[1];  // (1 - sqrt alpha)/2 ~ -0.866
    CHECK(t1.sign_at(true) == 1);
    CHECK(t1.sign_at(false) == -1);
    CHECK(t2.sign_at(true) == -1);
    CHECK(t2.sign_at(false) == 1);
    CHECK((t1 * t2).sign_at(true) == -1);   // -(1+sqrt5)/2 at the real embeddings
    CHECK((t1 * t2).sign_at(false) == -1);
    CHECK((-(t1 * t2)).sign_at(true) == 1);
}

TEST_CASE("unit power membership") {
    QuadElem eps(BigRat(1, 2), BigRat(1, 2), 5);  // golden ratio
    QuadElem one = QuadElem::rational(BigRat(1), 5);
    QuadElem e4 = eps * eps * eps * eps;
    CHECK(is_unit_nc_power(e4, eps, 4));
    CHECK(is_unit_nc_power(one, eps, 4));
    CHECK_FALSE(is_unit_nc_power(QuadElem::rational(BigRat(-1), 5), eps, 4));
    CHECK_FALSE(is_unit_nc_power(eps * eps, eps, 4));
    CHECK(is_unit_nc_power(eps * eps, eps, 2));
    CHECK(is_unit_nc_power(e4.inverse(), eps, 4));
    CHECK_THROWS_AS(is_unit_nc_power(QuadElem(BigRat(2), BigRat(0), 5), eps, 4),
                    std::invalid_argument);
}

TEST_CASE("unit image orders match the published values") {
    CHECK(unit_image_order(pair_for("k0", "l0"), 4, UnitCondition::OddRankCompact) == 4);
    CHECK(unit_image_order(pair_for("k0", "l0"), 2, UnitCondition::EvenRankCompact) == 2);
    CHECK(unit_image_order(pair_for("k0", "l400"), 4, UnitCondition::OddRankCompact) == 4);
    CHECK(unit_image_order(pair_for("k0", "l475"), 4, UnitCondition::OddRankCompact) == 4);
    CHECK(unit_image_order(pair_for("k0", "l400"), 2, UnitCondition::EvenRankCompact) == 2);
    CHECK(unit_image_order(pair_for("Q", "lm4"), 2, UnitCondition::ImaginarySquare) == 2);
    CHECK(unit_image_order(pair_for("Q", "l1"), 2, UnitCondition::NoncompactEven) == 2);
    // missing units
    CHECK_THROWS_AS(unit_image_order(pair_for("k0", "l775"), 4, UnitCondition::OddRankCompact),
                    std::invalid_argument);
}

TEST_CASE("membership is invariant under multiplication by nc-th unit powers") {
    FieldPair pair = pair_for("k0", "l0");
    const auto& units = pair.l.fund_units;
    for (int nc : {2, 4}) {
        UnitCondition cond =
            nc == 4 ? UnitCondition::OddRankCompact : UnitCondition::EvenRankCompact;
        TowerElement shift1 = units[0].pow(static_cast<unsigned>(nc));
        TowerElement shift2 = units[1].pow(static_cast<unsigned>(nc));
        for (int i = 0; i < nc; ++i) {
            for (int j = 0; j < nc; ++j) {
                TowerElement x = units[0].pow(i) * units[1].pow(j);
                for (bool neg : {false, true}) {
                    bool base = unit_satisfies(pair, x, neg, cond, nc);
                    CHECK(unit_satisfies(pair, x * shift1, neg, cond, nc) == base);
                    CHECK(unit_satisfies(pair, x * shift2, neg, cond, nc) == base);
                    CHECK(unit_satisfies(pair, x * shift1 * shift2 * shift1, neg, cond, nc) ==
                          base);
                }
            }
        }
    }
}

TEST_CASE("members form a subgroup modulo nc-th powers") {
    for (const char* label : {"l0", "l400", "l475"}) {
        FieldPair pair = pair_for("k0", label);
        const auto& units = pair.l.fund_units;
        int nc = 4;
        UnitCondition cond = UnitCondition::OddRankCompact;
        std::vector<TowerElement> members;
        for (int i = 0; i < nc; ++i)
            for (int j = 0; j < nc; ++j) {
                TowerElement x = units[0].pow(i) * units[1].pow(j);
                if (unit_satisfies(pair, x, false, cond, nc)) members.push_back(x);
                else if (unit_satisfies(pair, x, true, cond, nc)) members.push_back(-x);
            }
        CHECK(members.size() == 4);
        for (const auto& x : members)
            for (const auto& y : members) {
                TowerElement z = x * y;
                bool in = unit_satisfies(pair, z, false, cond, nc) ||
                          unit_satisfies(pair, z, true, cond, nc);
                CHECK(in);
            }
    }
}

TEST_CASE("field pair construction") {
    const FieldTable& t = builtin_table();
    FieldPair inner = FieldPair::inner(t.by_label("Q"));
    CHECK(inner.rel_degree == 1);
    CHECK(form_kind_name(inner.form_kind) == "inner");
    CHECK_THROWS_AS(FieldPair::outer(t.by_label("k0"), t.by_label("k0")), std::invalid_argument);
    CHECK_THROWS_AS(FieldPair::outer(t.by_label("k725"), t.by_label("l0")),
                    std::invalid_argument);
}
