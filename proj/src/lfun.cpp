#include "orbvol/lfun.hpp"

#include <cmath>
#include <memory>
#include <mutex>

namespace orbvol {

namespace {

// shared sieve; callers only read the prefix up to their limit, so results do
// not depend on what was cached before.  Snapshots keep concurrent readers
// valid while the cache grows.
struct PrimeCache {
    std::uint64_t sieved_to = 0;
    std::vector<std::uint64_t> primes;
};

std::shared_ptr<const PrimeCache> cached_primes(std::uint64_t limit) {
    static std::shared_ptr<const PrimeCache> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache || cache->sieved_to < limit) {
        auto next = std::make_shared<PrimeCache>();
        next->sieved_to = std::max<std::uint64_t>(limit + limit / 4, 1 << 16);
        next->primes = sieve_primes(next->sieved_to);
        cache = next;
    }
    return cache;
}

double bernoulli_over_factorial(unsigned m) {
    // B_m / m! as a double
    BigRat b = bernoulli_number(m);
    return b.get_d() / factorial_exact(m).get_d();
}

double pochhammer(double s, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= s + i;
    return r;
}

}  // namespace

ErrBounded hurwitz_zeta(double s, const BigRat& x, double tol) {
    if (!(s > 1.0001)) throw std::invalid_argument("hurwitz_zeta: s must exceed 1");
    if (!(x > 0 && x <= 1)) throw std::invalid_argument("hurwitz_zeta: x must be in (0,1]");
    if (tol < 1e-15)
        throw precision_error("hurwitz_zeta: tol below working precision (min 1e-15)");
    const double xd = x.get_d();
    const int kJ = 12;
    for (std::uint64_t n_terms = 24;; n_terms *= 2) {
        if (n_terms > (1u << 24))
            throw precision_error("hurwitz_zeta: Euler-Maclaurin did not reach tol");
        const double nx = static_cast<double>(n_terms) + xd;
        // remainder: first omitted correction term, doubled for safety
        // (f(t) = (t+x)^{-s} is completely monotone)
        double rem = 2.0 * std::fabs(bernoulli_over_factorial(2 * kJ + 2) *
                                     pochhammer(s, 2 * kJ + 1)) *
                     std::pow(nx, -s - 2 * kJ - 1);
        LogAccumulator acc;
        for (std::uint64_t n = 0; n < n_terms; ++n)
            acc.add(std::pow(static_cast<double>(n) + xd, -s));
        acc.add(std::pow(nx, 1.0 - s) / (s - 1.0));
        acc.add(0.5 * std::pow(nx, -s));
        for (int j = 1; j <= kJ; ++j)
            acc.add(bernoulli_over_factorial(2 * j) * pochhammer(s, 2 * j - 1) *
                    std::pow(nx, -s - 2 * j + 1));
        double v = acc.total();
        double abs_err = rem + acc.rounding_error() + 3e-16 * acc.abs_sum;
        if (abs_err <= tol * v) return ErrBounded::from_log(std::log(v), abs_err / v + 2e-16);
    }
}

ErrBounded riemann_zeta(double s, double tol) { return hurwitz_zeta(s, BigRat(1), tol); }

namespace {

long double log_bigint_ld(const BigInt& n) {
    long ex = 0;
    double m = mpz_get_d_2exp(&ex, n.get_mpz_t());
    return std::log(static_cast<long double>(m)) +
           static_cast<long double>(ex) * 0.6931471805599453094172321215L;
}

}  // namespace

ErrBounded riemann_zeta_even(int i) {
    if (i < 1 || i > 32) throw std::invalid_argument("riemann_zeta_even: i must be in [1,32]");
    // zeta(2i) = (-1)^{i+1} B_{2i} (2 pi)^{2i} / (2 (2i)!), evaluated in
    // extended precision: the large terms cancel almost completely for big i
    BigRat b = bernoulli_number(2 * static_cast<unsigned>(i));
    const long double log_2pi = 1.8378770664093454835606594728L;
    long double lv = log_bigint_ld(abs(b.get_num())) - log_bigint_ld(b.get_den()) +
                     2.0L * i * log_2pi - 0.6931471805599453094172321215L -
                     log_bigint_ld(factorial_exact(2 * static_cast<unsigned>(i)));
    double err = 6e-16;
    if (2 * i >= 40) {
        // the tail series gives the same value with full relative precision;
        // cross-validate the Bernoulli form against it and keep the sharper one
        double s = 2.0 * i;
        double sum = 0.0;
        for (int n = 40; n >= 2; --n) sum += std::pow(static_cast<double>(n), -s);
        double series = std::log1p(sum);  // tail beyond 40 is < 41^{-40}
        if (std::fabs(series - static_cast<double>(lv)) > err + 1e-15)
            throw std::logic_error("riemann_zeta_even: Bernoulli form disagrees with the series");
        return ErrBounded::from_log(series, 3e-16 * series + 1e-30);
    }
    return ErrBounded::from_log(static_cast<double>(lv), err);
}

ErrBounded dirichlet_l(std::int64_t d, double s, double tol) {
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("dirichlet_l: " + std::to_string(d) +
                                    " is not a fundamental discriminant");
    if (d == 1) return riemann_zeta(s, tol);
    const std::uint64_t q = static_cast<std::uint64_t>(d > 0 ? d : -d);
    LogAccumulator acc;
    double abs_err = 0.0;
    for (std::uint64_t a = 1; a <= q; ++a) {
        int chi = kronecker_symbol(d, a);
        if (chi == 0) continue;
        ErrBounded hz = hurwitz_zeta(s, BigRat(static_cast<unsigned long>(a),
                                               static_cast<unsigned long>(q)),
                                     tol / 4.0);
        double v = hz.value();
        acc.add(chi * v);
        abs_err += v * hz.log_err;
    }
    double scale = std::pow(static_cast<double>(q), -s);
    double v = acc.total() * scale;
    abs_err = (abs_err + acc.rounding_error()) * scale;
    if (!(v > 0) || abs_err >= v / 2)
        throw precision_error("dirichlet_l: cancellation left no significant value");
    return ErrBounded::from_log(std::log(v), abs_err / v + 2e-16);
}

double euler_tail_bound(double p_limit, int degree_terms, double s) {
    // sum_{p > P} p^{-s} <= sum_{m > P, gcd(m, 30) = 1} m^{-s}
    //                    <= (4/15) (P-30)^{1-s} / (s-1) + 8 P^{-s}
    // and each local log-factor is <= 1.01 p^{-s} per residue-degree term.
    double pm = p_limit - 30.0;
    return 1.01 * degree_terms *
           ((4.0 / 15.0) * std::pow(pm, 1.0 - s) / (s - 1.0) + 8.0 * std::pow(p_limit, -s));
}

std::uint64_t euler_prime_limit(int degree_terms, double s, double tol, std::uint64_t cap) {
    double target = tol * 0.75;
    double guess = 30.0 + std::pow((s - 1.0) * target * 15.0 / (4.0 * 1.01 * degree_terms),
                                   -1.0 / (s - 1.0));
    std::uint64_t p = static_cast<std::uint64_t>(std::max(64.0, guess));
    while (euler_tail_bound(static_cast<double>(p), degree_terms, s) > target) {
        if (p >= cap) {
            double achievable = 2.0 * euler_tail_bound(static_cast<double>(cap), degree_terms, s);
            throw precision_error(
                "euler product needs primes beyond the cap of " + std::to_string(cap) +
                "; achievable tol there is about " + std::to_string(achievable));
        }
        p = std::min(cap, p + p / 4 + 16);
    }
    return std::min(p, cap);
}

namespace {

ErrBounded dedekind_euler(const NumberField& f, int s, const EvalOptions& opts) {
    std::uint64_t limit =
        euler_prime_limit(f.degree, static_cast<double>(s), opts.tol, opts.prime_cap);
    auto cache = cached_primes(limit);
    LogAccumulator acc;
    for (std::uint64_t p : cache->primes) {
        if (p > limit) break;
        SplittingType st = f.splitting_at(p);
        for (auto [deg, mult] : st.factors) {
            (void)mult;  // each factor is one prime ideal; e enters only ramification
            acc.add(-std::log1p(-std::pow(static_cast<double>(p), -static_cast<double>(deg * s))));
        }
    }
    double err = euler_tail_bound(static_cast<double>(limit), f.degree, s) +
                 acc.rounding_error() + 3e-16 * acc.abs_sum;
    return ErrBounded::from_log(acc.total(), err);
}

ErrBounded dedekind_character(const NumberField& f, int s, const EvalOptions& opts) {
    ErrBounded z = riemann_zeta(static_cast<double>(s), opts.tol / 2.0);
    if (f.degree == 1) return z;
    ErrBounded l = dirichlet_l(f.quadratic_disc_signed(), static_cast<double>(s), opts.tol / 2.0);
    return z * l;
}

}  // namespace

ErrBounded dedekind_zeta(const NumberField& f, int s, const EvalOptions& opts,
                         ZetaStrategy strategy) {
    if (s < 2) throw std::invalid_argument("dedekind_zeta: s must be >= 2");
    switch (strategy) {
        case ZetaStrategy::Auto:
            if (f.degree == 1)
                return (s % 2 == 0 && s <= 64) ? riemann_zeta_even(s / 2)
                                               : riemann_zeta(static_cast<double>(s), opts.tol);
            if (f.degree == 2) return dedekind_character(f, s, opts);
            return dedekind_euler(f, s, opts);
        case ZetaStrategy::EulerProduct:
            return dedekind_euler(f, s, opts);
        case ZetaStrategy::CharacterSum:
            if (f.degree > 2)
                throw std::invalid_argument(
                    "dedekind_zeta: character-sum strategy applies to degree <= 2 only");
            return dedekind_character(f, s, opts);
        case ZetaStrategy::CrossCheck: {
            ErrBounded a = dedekind_zeta(f, s, opts, ZetaStrategy::Auto);
            ErrBounded b = dedekind_euler(f, s, opts);
            if (!a.consistent_with(b))
                throw std::logic_error("dedekind_zeta: strategies disagree beyond error bounds");
            return a.log_err <= b.log_err ? a : b;
        }
    }
    throw std::logic_error("dedekind_zeta: unreachable");
}

std::string dedekind_strategy_note(const NumberField& f, ZetaStrategy strategy) {
    if (strategy == ZetaStrategy::EulerProduct) return "euler-product";
    if (strategy == ZetaStrategy::CharacterSum) return "zeta*L character sum";
    if (strategy == ZetaStrategy::CrossCheck) return "cross-checked strategies";
    if (f.degree == 1) return "exact Bernoulli / Euler-Maclaurin";
    if (f.degree == 2) return "zeta*L character sum";
    return "euler-product";
}

ErrBounded relative_l(const FieldPair& pair, int s, const EvalOptions& opts,
                      ZetaStrategy strategy) {
    if (s < 2) throw std::invalid_argument("relative_l: s must be >= 2");
    if (pair.rel_degree == 1) return ErrBounded::one();
    if (pair.rel_degree == 3)
        throw std::invalid_argument(
            "relative_l: triality pairs are out of scope (only discriminant bounds are used)");
    if (pair.k.is_rationals() &&
        (strategy == ZetaStrategy::Auto || strategy == ZetaStrategy::CharacterSum)) {
        return dirichlet_l(pair.l.quadratic_disc_signed(), static_cast<double>(s), opts.tol);
    }
    if (strategy == ZetaStrategy::CrossCheck) {
        ErrBounded a = relative_l(pair, s, opts, ZetaStrategy::Auto);
        ErrBounded b = relative_l(pair, s, opts, ZetaStrategy::EulerProduct);
        if (!a.consistent_with(b))
            throw std::logic_error("relative_l: strategies disagree beyond error bounds");
        return a.log_err <= b.log_err ? a : b;
    }
    // single Euler product of local-factor ratios over rational primes
    int degree_terms = pair.l.degree + pair.k.degree;
    std::uint64_t limit =
        euler_prime_limit(degree_terms, static_cast<double>(s), opts.tol, opts.prime_cap);
    auto cache = cached_primes(limit);
    LogAccumulator acc;
    for (std::uint64_t p : cache->primes) {
        if (p > limit) break;
        double dp = static_cast<double>(p);
        for (auto [deg, mult] : pair.l.splitting_at(p).factors) {
            (void)mult;
            acc.add(-std::log1p(-std::pow(dp, -static_cast<double>(deg * s))));
        }
        for (auto [deg, mult] : pair.k.splitting_at(p).factors) {
            (void)mult;
            acc.add(std::log1p(-std::pow(dp, -static_cast<double>(deg * s))));
        }
    }
    double err = euler_tail_bound(static_cast<double>(limit), degree_terms, s) +
                 acc.rounding_error() + 3e-16 * acc.abs_sum;
    return ErrBounded::from_log(acc.total(), err);
}

ErrBounded zeta_product(const FieldPair& pair, int r, const EvalOptions& opts) {
    if (r < 3) throw std::invalid_argument("zeta_product: rank must be >= 3");
    EvalOptions per = opts;
    per.tol = opts.tol / static_cast<double>(r);
    ErrBounded prod = ErrBounded::one();
    for (int i = 1; i <= r - 1; ++i) prod *= dedekind_zeta(pair.k, 2 * i, per);
    // split inner forms carry the full zeta_k(r) factor at every place; for
    // outer quadratic forms it degenerates to the relative L-function
    if (pair.rel_degree == 1) prod *= dedekind_zeta(pair.k, r, per);
    else prod *= relative_l(pair, r, per);
    return prod;
}

}  // namespace orbvol
