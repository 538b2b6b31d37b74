#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbvol/lfun.hpp"

using namespace orbvol;

namespace {

const double kPi = M_PI;

// direct-summation oracle with an integral tail estimate
double hurwitz_direct(double s, double x, std::uint64_t terms) {
    double acc = 0.0;
    for (std::uint64_t n = terms; n-- > 0;) acc += std::pow(n + x, -s);
    double nx = static_cast<double>(terms) + x;
    return acc + std::pow(nx, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nx, -s);
}

double rel_diff(const ErrBounded& v, double expected) {
    return std::fabs(v.log_value - std::log(expected));
}

FieldPair pair_k0_l0() {
    return FieldPair::outer(builtin_table().by_label("k0"), builtin_table().by_label("l0"));
}

}  // namespace

TEST_CASE("hurwitz zeta classical identities") {
    CHECK(rel_diff(hurwitz_zeta(2, BigRat(1)), kPi * kPi / 6.0) < 1e-13);
    CHECK(rel_diff(hurwitz_zeta(2, BigRat(1, 2)), kPi * kPi / 2.0) < 1e-13);
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    for (int s = 2; s <= 8; ++s) {
        double expect = (std::pow(2.0, s) - 1.0) * riemann_zeta(s).value();
        CHECK(rel_diff(hurwitz_zeta(s, BigRat(1, 2)), expect) < 1e-12);
    }
    // frozen oracle value for zeta(3, 1/5)
    CHECK(rel_diff(hurwitz_zeta(3, BigRat(1, 5)), 125.73901805721796653) < 1e-13);
    // direct-summation oracle
    double direct = hurwitz_direct(3.0, 0.2, 2000000);
    CHECK(rel_diff(hurwitz_zeta(3, BigRat(1, 5)), direct) < 1e-12);
    CHECK_THROWS_AS(hurwitz_zeta(2, BigRat(2)), std::invalid_argument);
    CHECK_THROWS_AS(hurwitz_zeta(2, BigRat(1), 1e-18), precision_error);
}

TEST_CASE("zeta at even integers via Bernoulli") {
    CHECK(rel_diff(riemann_zeta_even(1), kPi * kPi / 6.0) < 1e-14);
    CHECK(rel_diff(riemann_zeta_even(2), std::pow(kPi, 4) / 90.0) < 1e-14);
    // i = 6 against direct summation
    double direct = hurwitz_direct(12.0, 1.0, 1000000);
    CHECK(rel_diff(riemann_zeta_even(6), direct) < 1e-14);
    CHECK(rel_diff(riemann_zeta_even(6), 1.0002460865533080483) < 1e-14);
    // strictly decreasing toward 1
    for (int i = 1; i < 32; ++i)
        CHECK(riemann_zeta_even(i).log_value > riemann_zeta_even(i + 1).log_value);
    CHECK(riemann_zeta_even(32).log_value > 0.0);
    CHECK(riemann_zeta_even(32).log_value < 1e-9);
    CHECK_THROWS_AS(riemann_zeta_even(0), std::invalid_argument);
    CHECK_THROWS_AS(riemann_zeta_even(33), std::invalid_argument);
}

TEST_CASE("Bernoulli route matches direct summation to 1e-12 for i <= 10") {
    for (int i = 1; i <= 10; ++i) {
        double direct = hurwitz_direct(2.0 * i, 1.0, i == 1 ? 4000000 : 200000);
        CAPTURE(i);
        CHECK(rel_diff(riemann_zeta_even(i), direct) < 1e-12);
    }
}

TEST_CASE("dirichlet L values") {
    // frozen: L(2, chi_5)
    CHECK(rel_diff(dirichlet_l(5, 2), 0.70621140325974096993) < 1e-12);
    CHECK(rel_diff(dirichlet_l(5, 4), 0.92933695649491083981) < 1e-12);
    CHECK(rel_diff(dirichlet_l(-3, 3), 0.88402381175007985674) < 1e-12);
    CHECK(rel_diff(dirichlet_l(-3, 6), 0.98456036325367773107) < 1e-12);
    // trivial character falls back to zeta
    CHECK(dirichlet_l(1, 2).consistent_with(riemann_zeta_even(1)));
    CHECK_THROWS_AS(dirichlet_l(10, 2), std::invalid_argument);
}

TEST_CASE("dirichlet L against a finite character-sum oracle") {
    // slowly-converging direct sum with alternating-block error control:
    // partial sums over full periods bracket the limit for s >= 2
    std::int64_t d = 5;
    double s = 2.0;
    double acc = 0.0;
    std::uint64_t terms = 1000000;
    for (std::uint64_t n = 1; n <= terms; ++n)
        acc += kronecker_symbol(d, n) * std::pow(static_cast<double>(n), -s);
    CHECK(std::fabs(dirichlet_l(5, 2).value() - acc) < 1e-5);
}

TEST_CASE("dedekind zeta strategies") {
    const FieldTable& t = builtin_table();
    CHECK(rel_diff(dedekind_zeta(t.by_label("Q"), 2), kPi * kPi / 6.0) < 1e-13);
    // frozen oracle: zeta_{k0}(2) = 2 pi^4 / (75 sqrt 5)
    double zk02 = 1.1616711956186385498;
    CHECK(rel_diff(dedekind_zeta(t.by_label("k0"), 2), zk02) < 1e-11);
    CHECK(rel_diff(dedekind_zeta(t.by_label("k0"), 2), 2.0 * std::pow(kPi, 4) / (75.0 * std::sqrt(5.0))) < 1e-11);
    CHECK(rel_diff(dedekind_zeta(t.by_label("k0"), 3), 1.0275480117416704481) < 1e-11);

    // euler-product strategy at a relaxed tolerance agrees with the character route
    EvalOptions loose;
    loose.tol = 1e-8;
    ErrBounded a = dedekind_zeta(t.by_label("k0"), 2, loose, ZetaStrategy::CharacterSum);
    ErrBounded b = dedekind_zeta(t.by_label("k0"), 2, loose, ZetaStrategy::EulerProduct);
    CHECK(a.consistent_with(b));
    CHECK(std::fabs(a.log_value - b.log_value) < 1e-7);

    // quartic field: Euler product with tail bound
    EvalOptions q;
    q.tol = 1e-8;
    ErrBounded zl0 = dedekind_zeta(t.by_label("l0"), 3, q);
    CHECK(zl0.log_err < 1e-8);
    CHECK(rel_diff(zl0, 1.0042700701682073955) < 1e-8);

    CHECK_THROWS_AS(dedekind_zeta(t.by_label("l0"), 2, {}, ZetaStrategy::CharacterSum),
                    std::invalid_argument);
    CHECK_THROWS_AS(dedekind_zeta(t.by_label("Q"), 1), std::invalid_argument);
    // s = 2 at 1e-12 needs primes beyond the cap for a quartic field
    EvalOptions tight;
    tight.tol = 1e-14;
    tight.prime_cap = 100000;
    CHECK_THROWS_AS(dedekind_zeta(t.by_label("l0"), 2, tight, ZetaStrategy::EulerProduct),
                    precision_error);
}

TEST_CASE("strategy agreement for quadratic fields across s") {
    const FieldTable& t = builtin_table();
    EvalOptions loose;
    loose.tol = 1e-7;
    for (const char* label : {"k0", "k8", "l1"}) {
        for (int s = 2; s <= 8; ++s) {
            ErrBounded a = dedekind_zeta(t.by_label(label), s, loose, ZetaStrategy::CharacterSum);
            ErrBounded b = dedekind_zeta(t.by_label(label), s, loose, ZetaStrategy::EulerProduct);
            CAPTURE(label);
            CAPTURE(s);
            CHECK(a.consistent_with(b));
        }
    }
}

TEST_CASE("relative L function") {
    const FieldTable& t = builtin_table();
    FieldPair inner = FieldPair::inner(t.by_label("Q"));
    CHECK(relative_l(inner, 5).log_value == 0.0);

    // k = Q: the relative L is the quadratic character L-function, both routes
    FieldPair q_l1 = FieldPair::outer(t.by_label("Q"), t.by_label("l1"));
    EvalOptions loose;
    loose.tol = 1e-9;
    for (int s : {3, 4, 6}) {
        ErrBounded a = relative_l(q_l1, s, loose, ZetaStrategy::CharacterSum);
        ErrBounded b = relative_l(q_l1, s, loose, ZetaStrategy::EulerProduct);
        CAPTURE(s);
        CHECK(a.consistent_with(b));
        CHECK(dirichlet_l(-3, s, 1e-9).consistent_with(a));
    }

    // frozen oracle: L_{l0|k0}(3)
    ErrBounded rel3 = relative_l(pair_k0_l0(), 3);
    CHECK(rel_diff(rel3, 0.977346127570226648) < 1e-10);
    CHECK(rel3.log_value < 0.0);  // smaller than zeta(3) > 1
    CHECK(rel_diff(relative_l(pair_k0_l0(), 5), 0.998715447123884979) < 1e-10);

    FieldPair tri = FieldPair::triality(t.by_label("c49"), [] {
        NumberField f;
        f.label = "fake9";
        f.degree = 9;
        f.s1 = 3;
        f.s2 = 3;
        f.disc = BigInt("200000");
        return f;
    }());
    CHECK_THROWS_AS(relative_l(tri, 4), std::invalid_argument);
}

TEST_CASE("zeta part of the local-factor product") {
    // frozen oracle values for the pair (k0, l0)
    EvalOptions opts;
    opts.tol = 1e-10;
    ErrBounded s3 = zeta_product(pair_k0_l0(), 3, opts);
    CHECK(rel_diff(s3, 1.14198870015289) < 1e-9);
    ErrBounded s16 = zeta_product(pair_k0_l0(), 16, opts);
    CHECK(rel_diff(s16, 1.16884471469701) < 1e-9);

    // (Q, Q): split inner forms carry zeta(2) zeta(4) zeta(3)
    FieldPair inner = FieldPair::inner(builtin_table().by_label("Q"));
    double expect = (kPi * kPi / 6.0) * (std::pow(kPi, 4) / 90.0) * 1.2020569031595942854;
    CHECK(rel_diff(zeta_product(inner, 3), expect) < 1e-12);
}

TEST_CASE("tail bound soundness: doubling the prime limit stays within the bound") {
    const FieldTable& t = builtin_table();
    for (const char* label : {"k0", "l0", "l1"}) {
        for (int s : {2, 3, 5}) {
            EvalOptions a;
            a.tol = s == 2 ? 1e-5 : 1e-6;
            ErrBounded va = dedekind_zeta(t.by_label(label), s, a, ZetaStrategy::EulerProduct);
            EvalOptions b;
            b.tol = a.tol / 4.0;  // roughly doubles the prime limit at s = 2..5
            ErrBounded vb = dedekind_zeta(t.by_label(label), s, b, ZetaStrategy::EulerProduct);
            CAPTURE(label);
            CAPTURE(s);
            CHECK(std::fabs(va.log_value - vb.log_value) <= va.log_err);
        }
    }
}

TEST_CASE("determinism: identical calls give identical bits") {
    EvalOptions opts;
    opts.tol = 1e-9;
    ErrBounded a = dedekind_zeta(builtin_table().by_label("l0"), 3, opts);
    ErrBounded b = dedekind_zeta(builtin_table().by_label("l0"), 3, opts);
    CHECK(a.log_value == b.log_value);
    CHECK(a.log_err == b.log_err);
}

TEST_CASE("monotonicity of dedekind zeta in s") {
    const FieldTable& t = builtin_table();
    EvalOptions loose;
    loose.tol = 1e-5;
    for (const char* label : {"Q", "k0", "l0"}) {
        double prev = 1e300;
        for (int s = 2; s <= 10; ++s) {
            double v = dedekind_zeta(t.by_label(label), s, loose).log_value;
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("error-bounded value formatting") {
    ErrBounded v = ErrBounded::from_double(0.00153459236020615);
    CHECK(v.decimal_string(3) == "1.53e-03");
    ErrBounded big =
        ErrBounded::from_log(std::log(8.79) + 163.0 * std::log(10.0), 1e-12);
    CHECK(big.decimal_string(3) == "8.79e+163");
    CHECK(ErrBounded::from_double(9.999999).decimal_string(3) == "1.00e+01");
    CHECK_FALSE(ErrBounded::from_log(800.0, 0.0).representable());
    CHECK_THROWS_AS(ErrBounded::from_log(800.0, 0.0).value(), std::overflow_error);
}
