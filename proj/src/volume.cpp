#include "orbvol/volume.hpp"

#include <cmath>

namespace orbvol {

RankDim RankDim::from_rank(int r) {
    if (r < 3) throw std::invalid_argument("RankDim: rank must be >= 3");
    return {r, 2 * r - 1};
}

RankDim RankDim::from_dim(int n) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("RankDim: dimension must be odd and >= 5");
    return {(n + 1) / 2, n};
}

ErrBounded prasad_constant(int r) {
    if (r < 3 || r > 40) throw std::invalid_argument("prasad_constant: r must be in [3,40]");
    const double log_2pi = std::log(2.0 * M_PI);
    double lv = log_factorial(static_cast<unsigned>(r - 1)) - r * log_2pi;
    for (int i = 1; i <= r - 1; ++i)
        lv += log_factorial(static_cast<unsigned>(2 * i - 1)) - 2.0 * i * log_2pi;
    return ErrBounded::from_log(lv, 1e-14 * (1.0 + std::fabs(lv)));
}

BigRat lambda_special(std::uint64_t p, int r) {
    if (r < 3) throw std::invalid_argument("lambda_special: r must be >= 3");
    BigInt pp(static_cast<unsigned long>(p));
    BigInt pr, pr1;
    mpz_pow_ui(pr.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(r));
    mpz_pow_ui(pr1.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(r - 1));
    BigRat v(BigInt((pr - 1) * (pr1 - 1)), BigInt(pp + 1));
    v.canonicalize();
    return v;
}

double lambda_lower_bound(double q_v, int r_v) {
    if (!(q_v >= 2) || r_v < 1)
        throw std::invalid_argument("lambda_lower_bound: need q_v >= 2 and r_v >= 1");
    return (2.0 / 3.0) * std::pow(0.75 * q_v, r_v);
}

ErrBounded LocalFactorProfile::lambda_product() const {
    ErrBounded prod = ErrBounded::one();
    for (const auto& e : entries) prod *= e.lambda;
    return prod;
}

namespace {

void check_admissible(const FieldPair& pair, const RankDim& rd) {
    if (!pair.k.totally_real())
        throw std::invalid_argument("prasad_covolume: k = " + pair.k.label +
                                    " is not totally real");
    int d = pair.k.degree;
    switch (pair.form_kind) {
        case FormKind::Inner:
            if (!pair.l.totally_real() || pair.l.degree != d)
                throw std::invalid_argument("prasad_covolume: inner form needs l = k");
            break;
        case FormKind::OuterQuadratic:
            if (rd.r % 2 == 1) {
                if (!(pair.l.s1 == 2 && pair.l.s2 == d - 1))
                    throw std::invalid_argument("prasad_covolume: odd rank outer form needs "
                                                "signature (2, d-1) for l/" + pair.l.label);
            } else {
                if (!(pair.l.s1 == 2 * d - 2 && pair.l.s2 == 1))
                    throw std::invalid_argument("prasad_covolume: even rank outer form needs "
                                                "signature (2d-2, 1) for l/" + pair.l.label);
            }
            break;
        case FormKind::Triality:
            if (rd.r != 4)
                throw std::invalid_argument("prasad_covolume: triality forms require rank 4");
            if (pair.l.s1 < 1)
                throw std::invalid_argument("prasad_covolume: triality splitting field needs a "
                                            "real place");
            break;
    }
}

}  // namespace

ErrBounded prasad_covolume(const FieldPair& pair, const RankDim& rd,
                           const LocalFactorProfile& profile, const EvalOptions& opts) {
    check_admissible(pair, rd);
    const int r = rd.r;
    const int d = pair.k.degree;
    double log_dk = log_bigint(pair.k.disc);
    double log_dl = log_bigint(pair.l.disc);
    double lv = 0.5 * (2.0 * r * r - r) * log_dk +
                0.5 * (2.0 * r - 1) * (log_dl - pair.rel_degree * log_dk);
    ErrBounded result = ErrBounded::from_log(lv, 4e-16 * (1.0 + std::fabs(lv)));
    result *= prasad_constant(r).pow_int(d);
    if (pair.form_kind == FormKind::Triality)
        throw std::invalid_argument(
            "prasad_covolume: the zeta part of a triality local-factor product is out of scope");
    result *= zeta_product(pair, r, opts);
    result *= profile.lambda_product();
    return result;
}

ErrBounded mu_to_hyperbolic(const ErrBounded& mu, int n) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("mu_to_hyperbolic: n must be odd and >= 5");
    double lv = std::log(4.0) + 0.5 * (n + 1) * std::log(M_PI) -
                log_factorial(static_cast<unsigned>((n - 1) / 2));
    return mu * ErrBounded::from_log(lv, 1e-15 * (1.0 + std::fabs(lv)));
}

IndexProfile minimal_index_constants(const RankDim& rd, Cocompactness c) {
    IndexProfile p;
    bool odd_rank = rd.r % 2 == 1;
    p.nc = odd_rank ? 4 : 2;
    p.epsilon = odd_rank ? 1 : 2;
    if (c == Cocompactness::Compact) {
        p.q = odd_rank ? 1 : 2;
        p.q_prime = 2;
        p.unit_image = odd_rank ? 4 : 2;
    } else if (odd_rank) {
        int m = (rd.r - 1) / 2;
        p.q = (m % 2 == 0) ? 1 : 4;
        p.q_prime = (m % 2 == 0) ? 1 : 2;
        p.unit_image = 1;
    } else {
        p.q = 2;
        p.q_prime = 2;
        p.unit_image = 2;
    }
    p.index = p.q * p.unit_image / p.q_prime;
    return p;
}

FieldPair minimal_candidate_pair(const RankDim& rd, Cocompactness c) {
    const FieldTable& t = builtin_table();
    if (c == Cocompactness::Compact) return FieldPair::outer(t.by_label("k0"), t.by_label("l0"));
    if (rd.r % 2 == 0) return FieldPair::outer(t.by_label("Q"), t.by_label("l1"));
    return FieldPair::inner(t.by_label("Q"));
}

LocalFactorProfile minimal_candidate_profile(const RankDim& rd, Cocompactness c) {
    LocalFactorProfile prof;
    if (c == Cocompactness::Compact) {
        // unique ramified place of l0/k0; its special-parahoric factor is
        // already carried by the zeta part of the local-factor product
        prof.r_places = {"(3-(-1)^r 2 sqrt5)"};
        return prof;
    }
    if (rd.r % 2 == 0) {
        prof.r_places = {"(3)"};
        return prof;
    }
    int m = (rd.r - 1) / 2;
    if (m % 2 == 1) {
        LocalFactorEntry e;
        e.place = "(2)";
        e.q_v = 2;
        e.r_v = rd.r;
        e.lambda = ErrBounded::exact_rational(lambda_special(2, rd.r));
        prof.entries.push_back(e);
        prof.t_places = {"(2)"};
        prof.t1_places = {"(2)"};
    }
    return prof;
}

namespace {

// prod_{i=1}^{r-1} (2i-1)!^w / (2pi)^{2iw} * zeta_k0(2i) or zeta(2i)
ErrBounded closed_form_zeta_block(int r, int weight, const NumberField* k_quadratic,
                              const EvalOptions& opts) {
    const double log_2pi = std::log(2.0 * M_PI);
    ErrBounded prod = ErrBounded::one();
    EvalOptions per = opts;
    per.tol = opts.tol / (r + 1);
    for (int i = 1; i <= r - 1; ++i) {
        double lv = weight * (log_factorial(static_cast<unsigned>(2 * i - 1)) - 2.0 * i * log_2pi);
        prod *= ErrBounded::from_log(lv, 2e-16 * (1.0 + std::fabs(lv)));
        ErrBounded z = riemann_zeta_even(i);
        if (k_quadratic)
            z *= dirichlet_l(k_quadratic->quadratic_disc_signed(), 2.0 * i, per.tol);
        prod *= z;
    }
    return prod;
}

}  // namespace

ErrBounded vol_compact_minimal(const RankDim& rd, const EvalOptions& opts) {
    const int r = rd.r;
    const FieldTable& t = builtin_table();
    const NumberField& k0 = t.by_label("k0");
    FieldPair pair = FieldPair::outer(k0, t.by_label("l0"));
    // 5^{r^2-r/2} 11^{r-1/2} (r-1)! / (2^{2r-1} pi^r) * L_{l0|k0}(r)
    //   * prod (2i-1)!^2/(2pi)^{4i} zeta_k0(2i)
    double lv = (r * r - 0.5 * r) * std::log(5.0) + (r - 0.5) * std::log(11.0) +
                log_factorial(static_cast<unsigned>(r - 1)) - (2.0 * r - 1.0) * std::log(2.0) -
                r * std::log(M_PI);
    ErrBounded v = ErrBounded::from_log(lv, 4e-16 * (1.0 + std::fabs(lv)));
    v *= relative_l(pair, r, opts);
    v *= closed_form_zeta_block(r, 2, &k0, opts);
    return v;
}

std::string noncompact_formula_case(int r) {
    if (r % 2 == 0) return "r even";
    return r % 4 == 1 ? "r = 1 mod 4" : "r = 3 mod 4";
}

ErrBounded vol_noncompact_minimal(const RankDim& rd, const EvalOptions& opts) {
    const int r = rd.r;
    ErrBounded block = closed_form_zeta_block(r, 1, nullptr, opts);
    if (r % 2 == 0) {
        // 3^{r-1/2}/2^{r-1} L_{l1|Q}(r) * block
        double lv = (r - 0.5) * std::log(3.0) - (r - 1.0) * std::log(2.0);
        ErrBounded v = ErrBounded::from_log(lv, 4e-16 * (1.0 + std::fabs(lv)));
        v *= dirichlet_l(-3, static_cast<double>(r), opts.tol);
        return v * block;
    }
    ErrBounded zr = riemann_zeta(static_cast<double>(r), opts.tol);
    if (r % 4 == 1) {
        double lv = -(r - 2.0) * std::log(2.0);
        return ErrBounded::from_log(lv, 2e-16 * (1.0 + std::fabs(lv))) * zr * block;
    }
    // (2^r - 1)(2^{r-1} - 1) / (3 * 2^{r-1})
    BigRat c(BigInt((BigInt(1) << r) - 1) * BigInt((BigInt(1) << (r - 1)) - 1),
             BigInt(3) * (BigInt(1) << (r - 1)));
    c.canonicalize();
    return ErrBounded::exact_rational(c) * zr * block;
}

ErrBounded vol_minimal_via_pipeline(const RankDim& rd, Cocompactness c, const EvalOptions& opts) {
    FieldPair pair = minimal_candidate_pair(rd, c);
    LocalFactorProfile prof = minimal_candidate_profile(rd, c);
    ErrBounded mu = prasad_covolume(pair, rd, prof, opts);
    long index = minimal_index_constants(rd, c).index;
    mu /= ErrBounded::exact_rational(BigRat(index));
    return mu_to_hyperbolic(mu, rd.n);
}

}  // namespace orbvol
