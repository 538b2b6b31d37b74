#ifndef ORBVOL_LFUN_HPP
#define ORBVOL_LFUN_HPP

#include "orbvol/arith.hpp"
#include "orbvol/err_bounded.hpp"
#include "orbvol/fields.hpp"

namespace orbvol {

struct EvalOptions {
    double tol = 1e-12;                       // relative
    std::uint64_t prime_cap = 100000000ULL;   // largest prime the Euler product may use
};

enum class ZetaStrategy { Auto, EulerProduct, CharacterSum, CrossCheck };

// Hurwitz zeta(s, x) for s > 1 and rational x in (0, 1], by Euler-Maclaurin
// with an explicit remainder bound <= tol (relative).
ErrBounded hurwitz_zeta(double s, const BigRat& x, double tol = 1e-12);

// zeta(s) for real s > 1.
ErrBounded riemann_zeta(double s, double tol = 1e-12);

// zeta(2i) through the exact Bernoulli route; error below 1e-15 relative.
ErrBounded riemann_zeta_even(int i);

// L(s, chi_D) for a fundamental discriminant D, via the Hurwitz decomposition
// L(s, chi) = |D|^{-s} sum_a chi(a) zeta(s, a/|D|).
ErrBounded dirichlet_l(std::int64_t d, double s, double tol = 1e-12);

// Dedekind zeta of F at integer s >= 2.  Quadratic fields default to the
// zeta(s) * L(s, chi_D) route; other degrees use the Euler product over
// rational primes with a rigorous tail bound.
ErrBounded dedekind_zeta(const NumberField& f, int s, const EvalOptions& opts = {},
                         ZetaStrategy strategy = ZetaStrategy::Auto);

std::string dedekind_strategy_note(const NumberField& f, ZetaStrategy strategy);

// L_{l|k}(s) = zeta_l(s) / zeta_k(s) as a single Euler product of local-factor
// ratios; 1 for inner pairs, rejected for triality pairs.
ErrBounded relative_l(const FieldPair& pair, int s, const EvalOptions& opts = {},
                      ZetaStrategy strategy = ZetaStrategy::Auto);

// zeta_k(2) zeta_k(4) ... zeta_k(2r-2) * L_{l|k}(r)  -- the zeta part of the
// local-factor product in the covolume formula.
ErrBounded zeta_product(const FieldPair& pair, int r, const EvalOptions& opts = {});

// Smallest prime limit achieving the requested Euler-product tail, and the
// rigorous tail bound at a given limit (log-space, i.e. relative).
double euler_tail_bound(double p_limit, int degree_terms, double s);
std::uint64_t euler_prime_limit(int degree_terms, double s, double tol, std::uint64_t cap);

}  // namespace orbvol

#endif
