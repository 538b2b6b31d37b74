#include "orbvol/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace orbvol {

double log_bigint(const BigInt& n) {
    if (sgn(n) <= 0) throw std::invalid_argument("log_bigint: argument must be positive");
    long ex = 0;
    double m = mpz_get_d_2exp(&ex, n.get_mpz_t());
    return std::log(m) + static_cast<double>(ex) * M_LN2;
}

double log_bigrat_abs(const BigRat& q) {
    if (sgn(q) == 0) throw std::invalid_argument("log_bigrat_abs: argument must be nonzero");
    BigInt num = abs(q.get_num());
    return log_bigint(num) - log_bigint(q.get_den());
}

BigInt factorial_exact(unsigned n) {
    static std::vector<BigInt> cache{1_mpz};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        cache.push_back(cache.back() * BigInt(static_cast<unsigned long>(cache.size())));
    }
    return cache[n];
}

double log_factorial(unsigned n) { return log_bigint(factorial_exact(n)); }

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::size_t memory_budget_bytes) {
    if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be >= 2");
    // odd-only bitmap: one bit per odd number <= limit
    std::uint64_t nbits = limit / 2 + 1;
    std::uint64_t nbytes = nbits / 8 + 1;
    if (nbytes > memory_budget_bytes)
        throw resource_error("sieve_primes: limit " + std::to_string(limit) +
                             " exceeds memory budget of " + std::to_string(memory_budget_bytes) +
                             " bytes");
    std::vector<std::uint64_t> words(nbits / 64 + 1, ~std::uint64_t(0));
    auto clear_bit = [&](std::uint64_t i) { words[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); };
    auto test_bit = [&](std::uint64_t i) { return (words[i >> 6] >> (i & 63)) & 1; };
    clear_bit(0);  // 1 is not prime
    for (std::uint64_t p = 3; p * p <= limit; p += 2) {
        if (!test_bit(p / 2)) continue;
        for (std::uint64_t q = p * p; q <= limit; q += 2 * p) clear_bit(q / 2);
    }
    std::vector<std::uint64_t> primes;
    if (limit >= 3) {
        double est = static_cast<double>(limit) / std::max(2.0, std::log(static_cast<double>(limit)));
        primes.reserve(static_cast<std::size_t>(est * 1.15) + 16);
    }
    primes.push_back(2);
    for (std::uint64_t n = 3; n <= limit; n += 2)
        if (test_bit(n / 2)) primes.push_back(n);
    return primes;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

bool is_squarefree_i64(std::int64_t n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e >= 2) return false;
    }
    return true;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 1) return true;
    std::int64_t m = ((d % 4) + 4) % 4;
    if (m == 1) return is_squarefree_i64(d);
    if (m == 0) {
        std::int64_t q = d / 4;
        std::int64_t qm = ((q % 4) + 4) % 4;
        return (qm == 2 || qm == 3) && is_squarefree_i64(q);
    }
    return false;
}

int kronecker_symbol(std::int64_t a, std::uint64_t n) {
    // standard Kronecker algorithm for (a|n), n >= 0
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int t = 0;
        while (n % 2 == 0) { n /= 2; ++t; }
        std::int64_t am8 = ((a % 8) + 8) % 8;
        if (t % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
    }
    std::uint64_t b;
    if (a < 0) {
        b = static_cast<std::uint64_t>(-a);
        if (n % 4 == 3) result = -result;
    } else {
        b = static_cast<std::uint64_t>(a);
    }
    b %= n;
    // Jacobi symbol (b|n) with n odd
    while (b != 0) {
        while (b % 2 == 0) {
            b /= 2;
            std::uint64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(b, n);
        if (b % 4 == 3 && n % 4 == 3) result = -result;
        b %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker(std::int64_t d, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("kronecker: p must be prime");
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("kronecker: " + std::to_string(d) +
                                    " is not a fundamental discriminant");
    return kronecker_symbol(d, p);
}

void PolyZ::normalize() {
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
}

bool PolyZ::is_monic() const {
    return !coeffs.empty() && coeffs.back() == 1;
}

BigRat PolyZ::eval(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + BigRat(*it);
    return acc;
}

double PolyZ::eval_double(double x) const {
    double acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

PolyZ PolyZ::derivative() const {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * BigInt(static_cast<long>(i)));
    if (d.empty()) d.push_back(0);
    return PolyZ(std::move(d));
}

std::string PolyZ::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs[i];
        if (c == 0 && degree() > 0) continue;
        if (!first) out << (sgn(c) >= 0 ? " + " : " - ");
        else if (sgn(c) < 0) out << "-";
        BigInt a = abs(c);
        first = false;
        if (i == 0 || a != 1) out << a.get_str();
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
    }
    return out.str();
}

PolyZ PolyZ::parse_csv(const std::string& text) {
    std::vector<BigInt> c;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        if (cur.empty()) throw std::invalid_argument("empty polynomial coefficient");
        c.emplace_back(cur);
    }
    if (c.empty()) throw std::invalid_argument("empty polynomial");
    return PolyZ(std::move(c));
}

int SplittingType::degree_sum() const {
    int s = 0;
    for (auto [f, e] : factors) s += f * e;
    return s;
}

bool SplittingType::squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](auto fe) { return fe.second == 1; });
}

std::string SplittingType::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out << ",";
        out << factors[i].first << "^" << factors[i].second;
    }
    return out.str();
}

namespace {

// dense polynomials over F_p, lowest coefficient first, p < 2^62
using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
        }
    }
    fp_trim(r);
    return r;
}

// remainder of a by monic-ized b
FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint64_t p) {
    fp_trim(a);
    int db = fp_deg(b);
    if (db < 0) throw std::invalid_argument("fp_rem: division by zero polynomial");
    std::uint64_t inv_lead = powmod_u64(b.back(), p - 2, p);
    while (fp_deg(a) >= db) {
        std::uint64_t c = mulmod_u64(a.back(), inv_lead, p);
        int shift = fp_deg(a) - db;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t sub = mulmod_u64(c, b[i], p);
            std::uint64_t& t = a[i + shift];
            t = (t >= sub) ? t - sub : t + p - sub;
        }
        fp_trim(a);
    }
    return a;
}

FpPoly fp_monic(FpPoly a, std::uint64_t p) {
    fp_trim(a);
    if (a.empty()) return a;
    std::uint64_t inv = powmod_u64(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod_u64(c, inv, p);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

FpPoly fp_div_exact(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    FpPoly q(std::max<int>(0, fp_deg(a) - fp_deg(b)) + 1, 0);
    FpPoly r = a;
    fp_trim(r);
    int db = fp_deg(b);
    std::uint64_t inv_lead = powmod_u64(b.back(), p - 2, p);
    while (fp_deg(r) >= db) {
        std::uint64_t c = mulmod_u64(r.back(), inv_lead, p);
        int shift = fp_deg(r) - db;
        q[shift] = c;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t sub = mulmod_u64(c, b[i], p);
            std::uint64_t& t = r[i + shift];
            t = (t >= sub) ? t - sub : t + p - sub;
        }
        fp_trim(r);
    }
    fp_trim(q);
    return q;
}

FpPoly fp_deriv(const FpPoly& a, std::uint64_t p) {
    FpPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod_u64(a[i], i % p, p));
    fp_trim(d);
    return d;
}

// x^(p^k) mod f, by repeated Frobenius powering
FpPoly fp_xq_pow(const FpPoly& f, std::uint64_t p, const FpPoly& start) {
    // returns start^p mod f
    FpPoly result{1};
    FpPoly base = fp_rem(start, f, p);
    std::uint64_t e = p;
    while (e) {
        if (e & 1) result = fp_rem(fp_mul(result, base, p), f, p);
        base = fp_rem(fp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return result;
}

// distinct-degree split of a squarefree monic u; appends (degree, mult) pairs
void fp_ddf(FpPoly u, std::uint64_t p, int mult, std::vector<std::pair<int, int>>& out) {
    FpPoly h{0, 1};  // x
    int i = 1;
    while (2 * i <= fp_deg(u)) {
        h = fp_xq_pow(u, p, h);  // now x^(p^i) mod u
        FpPoly hmx = h;
        if (hmx.size() < 2) hmx.resize(2, 0);
        hmx[1] = (hmx[1] + p - 1) % p;
        fp_trim(hmx);
        FpPoly g = fp_gcd(hmx, u, p);
        if (fp_deg(g) > 0) {
            int count = fp_deg(g) / i;
            for (int c = 0; c < count; ++c) out.emplace_back(i, mult);
            u = fp_div_exact(u, g, p);
            h = fp_rem(h, u, p);
        }
        ++i;
    }
    if (fp_deg(u) > 0) out.emplace_back(fp_deg(u), mult);
}

// squarefree decomposition in characteristic p; calls fp_ddf on each part
void fp_sff(FpPoly f, std::uint64_t p, int mult, std::vector<std::pair<int, int>>& out) {
    f = fp_monic(f, p);
    if (fp_deg(f) <= 0) return;
    FpPoly fd = fp_deriv(f, p);
    if (fd.empty()) {
        // f = g(x^p); over F_p the coefficients are their own p-th roots
        FpPoly g;
        for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p)) g.push_back(f[i]);
        fp_sff(std::move(g), p, mult * static_cast<int>(p), out);
        return;
    }
    FpPoly c = fp_gcd(f, fd, p);
    FpPoly w = fp_div_exact(f, c, p);
    int i = 1;
    while (fp_deg(w) > 0) {
        FpPoly y = fp_gcd(w, c, p);
        FpPoly z = fp_div_exact(w, y, p);
        if (fp_deg(z) > 0) fp_ddf(std::move(z), p, mult * i, out);
        w = std::move(y);
        c = fp_div_exact(c, w, p);
        ++i;
    }
    if (fp_deg(c) > 0) fp_sff(std::move(c), p, mult * static_cast<int>(p), out);
}

}  // namespace

SplittingType splitting_type_mod_p(const PolyZ& f, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("splitting_type_mod_p: p must be prime");
    if (!f.is_monic()) throw std::invalid_argument("splitting_type_mod_p: polynomial must be monic");
    FpPoly fp(f.coeffs.size());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        BigInt r = f.coeffs[i] % BigInt(static_cast<unsigned long>(p));
        if (sgn(r) < 0) r += BigInt(static_cast<unsigned long>(p));
        fp[i] = r.get_ui();
    }
    if (fp.back() == 0)
        throw std::logic_error("splitting_type_mod_p: leading coefficient vanished mod p");
    SplittingType st;
    fp_sff(std::move(fp), p, 1, st.factors);
    std::sort(st.factors.begin(), st.factors.end());
    if (st.degree_sum() != f.degree())
        throw std::logic_error("splitting_type_mod_p: factor degrees do not sum to deg f");
    return st;
}

BigRat bernoulli_number(unsigned m) {
    if (m > 64) throw std::invalid_argument("bernoulli_number: m must be <= 64");
    if (m == 1) return BigRat(-1, 2);
    if (m % 2 == 1) return BigRat(0);
    static std::vector<BigRat> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= m) {
        unsigned k = static_cast<unsigned>(cache.size());
        if (k == 0) {
            cache.emplace_back(1);
            continue;
        }
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        BigRat acc(0);
        for (unsigned j = 0; j < k; ++j) acc += BigRat(binomial(k + 1, j)) * cache[j];
        BigRat b = -acc / BigRat(static_cast<long>(k) + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[m];
}

}  // namespace orbvol
