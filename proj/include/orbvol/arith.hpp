#ifndef ORBVOL_ARITH_HPP
#define ORBVOL_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace orbvol {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Thrown when a requested tolerance cannot be met at the configured
// working precision or prime limit.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an operation would exceed its memory budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// log of a positive big integer, accurate to a few ulp.
double log_bigint(const BigInt& n);
// log |q| for a nonzero rational.
double log_bigrat_abs(const BigRat& q);
// exact n! as a big integer (cached).
BigInt factorial_exact(unsigned n);
// log(n!) computed from the exact factorial.
double log_factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// Primes in [2, limit], ascending.  The sieve bitmap must fit in
// `memory_budget_bytes` or a resource_error is thrown.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                        std::size_t memory_budget_bytes = std::size_t(1) << 28);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

bool is_fundamental_discriminant(std::int64_t d);

// Kronecker symbol (a|n) for arbitrary n >= 0.
int kronecker_symbol(std::int64_t a, std::uint64_t n);

// Splitting of a rational prime in the quadratic field of fundamental
// discriminant D: +1 split, -1 inert, 0 ramified.  Rejects non-fundamental D.
int kronecker(std::int64_t d, std::uint64_t p);

// Integer polynomial, constant term first.
struct PolyZ {
    std::vector<BigInt> coeffs;

    PolyZ() = default;
    explicit PolyZ(std::vector<BigInt> c) : coeffs(std::move(c)) { normalize(); }

    void normalize();
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_monic() const;
    BigRat eval(const BigRat& x) const;
    double eval_double(double x) const;
    PolyZ derivative() const;
    std::string to_string() const;

    static PolyZ parse_csv(const std::string& text);  // "a0,a1,...,an"
};

// Multiset of (residue degree f, multiplicity e) for the factorization of a
// monic polynomial mod p; sorted by (f, e).
struct SplittingType {
    std::vector<std::pair<int, int>> factors;

    int degree_sum() const;
    bool squarefree() const;
    bool operator==(const SplittingType& o) const { return factors == o.factors; }
    std::string to_string() const;
};

// Degrees and multiplicities of the irreducible factors of f mod p, via
// squarefree decomposition followed by distinct-degree factorization.
SplittingType splitting_type_mod_p(const PolyZ& f, std::uint64_t p);

// Exact Bernoulli number B_m for 0 <= m <= 64 (B_1 = -1/2; odd m > 1 give 0).
BigRat bernoulli_number(unsigned m);

}  // namespace orbvol

#endif
