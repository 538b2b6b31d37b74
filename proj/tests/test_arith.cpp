#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbvol/arith.hpp"

using namespace orbvol;

namespace {

// trial-division oracle
bool slow_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// brute-force factorization over F_p for small p and degree: repeatedly strip
// the smallest-degree monic divisor (necessarily irreducible)
using SmallPoly = std::vector<int>;  // lowest first, coefficients mod p

SmallPoly sp_trim(SmallPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool sp_divides(const SmallPoly& g, SmallPoly f, int p) {
    f = sp_trim(f);
    SmallPoly gg = sp_trim(g);
    int inv = 1;
    for (int i = 1; i < p; ++i)
        if (static_cast<long>(i) * gg.back() % p == 1) inv = i;
    while (f.size() >= gg.size() && !f.empty()) {
        int c = static_cast<int>(static_cast<long>(f.back()) * inv % p);
        std::size_t shift = f.size() - gg.size();
        for (std::size_t i = 0; i < gg.size(); ++i)
            f[i + shift] = ((f[i + shift] - c * gg[i]) % p + p) % p;
        f = sp_trim(f);
    }
    return f.empty();
}

SmallPoly sp_quot(const SmallPoly& f, const SmallPoly& g, int p) {
    SmallPoly r = sp_trim(f), gg = sp_trim(g), q(f.size(), 0);
    int inv = 1;
    for (int i = 1; i < p; ++i)
        if (static_cast<long>(i) * gg.back() % p == 1) inv = i;
    while (r.size() >= gg.size() && !r.empty()) {
        int c = static_cast<int>(static_cast<long>(r.back()) * inv % p);
        std::size_t shift = r.size() - gg.size();
        q[shift] = c;
        for (std::size_t i = 0; i < gg.size(); ++i)
            r[i + shift] = ((r[i + shift] - c * gg[i]) % p + p) % p;
        r = sp_trim(r);
    }
    return sp_trim(q);
}

SplittingType brute_force_splitting(const PolyZ& f, int p) {
    SmallPoly cur(f.coeffs.size());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        BigInt r = f.coeffs[i] % p;
        if (sgn(r) < 0) r += p;
        cur[i] = static_cast<int>(r.get_ui());
    }
    cur = sp_trim(cur);
    std::vector<std::pair<int, int>> found;
    for (int deg = 1; deg < static_cast<int>(cur.size());) {
        // enumerate monic divisors of degree deg
        long count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        bool hit = false;
        for (long code = 0; code < count && !hit; ++code) {
            SmallPoly g(deg + 1, 0);
            long c = code;
            for (int i = 0; i < deg; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[deg] = 1;
            if (sp_divides(g, cur, p)) {
                int mult = 0;
                while (sp_divides(g, cur, p)) {
                    cur = sp_quot(cur, g, p);
                    ++mult;
                }
                found.emplace_back(deg, mult);
                hit = true;
            }
        }
        if (!hit) ++deg;
        if (cur.size() <= 1) break;
    }
    if (cur.size() > 1) found.emplace_back(static_cast<int>(cur.size()) - 1, 1);
    SplittingType st;
    st.factors = found;
    std::sort(st.factors.begin(), st.factors.end());
    return st;
}

// Akiyama-Tanigawa: an independent route to the Bernoulli numbers
BigRat bernoulli_at(unsigned n) {
    std::vector<BigRat> a(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = BigRat(1, static_cast<long>(m) + 1);
        for (unsigned j = m; j >= 1; --j) {
            a[j - 1] = BigRat(static_cast<long>(j)) * (a[j - 1] - a[j]);
        }
    }
    return a[0];  // B_n with B_1 = +1/2 convention
}

}  // namespace

TEST_CASE("prime sieve") {
    CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
    auto primes = sieve_primes(100);
    std::size_t expected = 0;
    for (std::uint64_t n = 2; n <= 100; ++n)
        if (slow_is_prime(n)) ++expected;
    CHECK(primes.size() == expected);
    CHECK(expected == 25);
    for (auto p : primes) CHECK(slow_is_prime(p));
    CHECK_THROWS_AS(sieve_primes(std::uint64_t(1) << 40, 1 << 20), resource_error);
    CHECK_THROWS_AS(sieve_primes(1), std::invalid_argument);
}

TEST_CASE("deterministic Miller-Rabin agrees with trial division") {
    for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime_u64(n) == slow_is_prime(n));
    CHECK(is_prime_u64(2147483647ull));          // 2^31 - 1
    CHECK_FALSE(is_prime_u64(2147483647ull * 2147483647ull));
}

TEST_CASE("kronecker basics") {
    CHECK(kronecker(5, 11) == 1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(5, 5) == 0);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 5) == 1);
    CHECK_THROWS_AS(kronecker(10, 3), std::invalid_argument);   // 10 not fundamental
    CHECK_THROWS_AS(kronecker(5, 10), std::invalid_argument);   // 10 not prime
    CHECK(is_fundamental_discriminant(1));
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(8));
    CHECK_FALSE(is_fundamental_discriminant(-2));
    CHECK_FALSE(is_fundamental_discriminant(12 * 4));
}

TEST_CASE("polynomial splitting mod p") {
    PolyZ x2m5 = PolyZ::parse_csv("-5,0,1");
    CHECK(splitting_type_mod_p(x2m5, 11) == SplittingType{{{1, 1}, {1, 1}}});
    CHECK(splitting_type_mod_p(x2m5, 5) == SplittingType{{{1, 2}}});
    PolyZ quartic = PolyZ::parse_csv("-1,2,0,-1,1");  // x^4 - x^3 + 2x - 1
    CHECK(splitting_type_mod_p(quartic, 2).degree_sum() == 4);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        CAPTURE(p);
        CHECK(splitting_type_mod_p(quartic, p) ==
              brute_force_splitting(quartic, static_cast<int>(p)));
        CHECK(splitting_type_mod_p(x2m5, p) == brute_force_splitting(x2m5, static_cast<int>(p)));
    }
    PolyZ quintic = PolyZ::parse_csv("-1,3,3,-4,-1,1");
    for (std::uint64_t p : {2, 3, 5, 7}) {
        CAPTURE(p);
        CHECK(splitting_type_mod_p(quintic, p) ==
              brute_force_splitting(quintic, static_cast<int>(p)));
    }
}

TEST_CASE("kronecker matches quadratic splitting classification") {
    auto primes = sieve_primes(10000);
    for (std::int64_t d : {5, 8, 12, 13, 17, 21, -3, -4, -7, -8}) {
        // monogenic defining polynomial: x^2 - d/4 or x^2 - x - (d-1)/4
        PolyZ f = d % 4 == 0
                      ? PolyZ::parse_csv(std::to_string(-d / 4) + ",0,1")
                      : PolyZ::parse_csv(std::to_string(-(d - 1) / 4) + ",-1,1");
        bool mismatches = false;
        for (std::uint64_t p : primes) {
            int k = kronecker(d, p);
            SplittingType st = splitting_type_mod_p(f, p);
            bool ok = (k == 1 && st == SplittingType{{{1, 1}, {1, 1}}}) ||
                      (k == -1 && st == SplittingType{{{2, 1}}}) ||
                      (k == 0 && st == SplittingType{{{1, 2}}});
            if (!ok) mismatches = true;
        }
        CAPTURE(d);
        CHECK_FALSE(mismatches);
    }
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_number(0) == BigRat(1));
    CHECK(bernoulli_number(1) == BigRat(-1, 2));
    CHECK(bernoulli_number(2) == BigRat(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(12) == BigRat(-691, 2730));
    CHECK_THROWS_AS(bernoulli_number(66), std::invalid_argument);

    // defining convolution identity: sum_j C(m+1, j) B_j = 0 for m >= 1
    for (unsigned m = 1; m <= 64; ++m) {
        BigRat acc(0);
        for (unsigned j = 0; j <= m; ++j) acc += BigRat(binomial(m + 1, j)) * bernoulli_number(j);
        CAPTURE(m);
        CHECK(acc == 0);
    }

    // cross-check against the Akiyama-Tanigawa recurrence (B_1 sign flips)
    for (unsigned m = 0; m <= 64; m += 2) {
        CAPTURE(m);
        CHECK(bernoulli_number(m) == bernoulli_at(m));
    }
    CHECK(bernoulli_at(1) == BigRat(1, 2));
}

TEST_CASE("polynomial basics") {
    PolyZ f = PolyZ::parse_csv("-1,2,0,-1,1");
    CHECK(f.degree() == 4);
    CHECK(f.is_monic());
    CHECK(f.eval(BigRat(1)) == 1);
    CHECK(f.eval(BigRat(0)) == -1);
    PolyZ d = f.derivative();
    CHECK(d.degree() == 3);
    CHECK(d.eval(BigRat(0)) == 2);
    CHECK_THROWS_AS(PolyZ::parse_csv(""), std::invalid_argument);
}

TEST_CASE("exact log helpers") {
    CHECK(log_bigint(BigInt(1)) == doctest::Approx(0.0));
    CHECK(log_bigint(factorial_exact(20)) == doctest::Approx(std::lgamma(21.0)).epsilon(1e-14));
    BigRat q(-3, 7);
    CHECK(log_bigrat_abs(q) == doctest::Approx(std::log(3.0 / 7.0)).epsilon(1e-14));
    CHECK(binomial(10, 3) == 120);
}
