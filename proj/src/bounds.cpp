#include "orbvol/bounds.hpp"

#include <cmath>

namespace orbvol {

std::string case_name(CaseKind kind) {
    switch (kind) {
        case CaseKind::CompactOddRank: return "compact-odd";
        case CaseKind::CompactEvenRank: return "compact-even";
        case CaseKind::Triality: return "triality";
        case CaseKind::NoncompactInner: return "noncompact-inner";
        case CaseKind::NoncompactOuterOdd: return "noncompact-outer-odd";
        case CaseKind::NoncompactEven: return "noncompact-even";
    }
    return "?";
}

CaseKind case_from_name(const std::string& name) {
    if (name == "compact-odd" || name == "compact-odd-rank") return CaseKind::CompactOddRank;
    if (name == "compact-even" || name == "compact-even-rank") return CaseKind::CompactEvenRank;
    if (name == "triality") return CaseKind::Triality;
    if (name == "noncompact-inner") return CaseKind::NoncompactInner;
    if (name == "noncompact-outer-odd" || name == "noncompact-odd")
        return CaseKind::NoncompactOuterOdd;
    if (name == "noncompact-even") return CaseKind::NoncompactEven;
    throw std::invalid_argument("unknown case '" + name + "'");
}

bool case_is_compact(CaseKind kind) {
    return kind == CaseKind::CompactOddRank || kind == CaseKind::CompactEvenRank ||
           kind == CaseKind::Triality;
}

void validate_case_rank(CaseKind kind, int r) {
    if (r < 3) throw std::invalid_argument("rank must be >= 3");
    switch (kind) {
        case CaseKind::Triality:
            if (r != 4) throw std::invalid_argument("triality forms require rank 4");
            break;
        case CaseKind::CompactOddRank:
        case CaseKind::NoncompactInner:
        case CaseKind::NoncompactOuterOdd:
            if (r % 2 == 0) throw std::invalid_argument(case_name(kind) + " requires odd rank");
            break;
        case CaseKind::CompactEvenRank:
        case CaseKind::NoncompactEven:
            if (r % 2 == 1) throw std::invalid_argument(case_name(kind) + " requires even rank");
            break;
    }
}

double h_ell_bound(double d_l, int d) {
    if (!(d_l >= 1) || d < 1) throw std::invalid_argument("h_ell_bound: bad arguments");
    return 16.0 * std::pow(M_PI / 12.0, 2 * d) * d_l;
}

double h_bound_for_ell_degree(double d_l, int ell_degree) {
    if (!(d_l >= 1) || ell_degree < 2) throw std::invalid_argument("h_bound: bad arguments");
    return 16.0 * std::pow(M_PI / 12.0, ell_degree) * d_l;
}

double brauer_siegel_bound(double s, int d, double d_l, double reg_lb) {
    if (!(s > 1.0)) throw std::invalid_argument("brauer_siegel_bound: s must exceed 1");
    if (d < 1 || !(d_l >= 1) || !(reg_lb > 0))
        throw std::invalid_argument("brauer_siegel_bound: bad arguments");
    double zs = riemann_zeta(s, 1e-12).value();
    double v = 2.0 * s * (s - 1.0) * 0.25 * std::pow(std::tgamma(s / 2.0), 2.0) *
               std::pow(std::tgamma(s), d - 1) *
               std::pow(std::pow(2.0, -2.0 * d + 2.0) * std::pow(M_PI, -2.0 * d) * d_l, s / 2.0) *
               std::pow(zs, 2.0 * d);
    return v / reg_lb;
}

double index_upper_bound(CaseKind kind, int d, int card_r, int card_t1, double h_l) {
    if (d < 1 || card_r < 0 || card_t1 < 0 || !(h_l >= 1))
        throw std::invalid_argument("index_upper_bound: bad arguments");
    bool rational_base = kind == CaseKind::NoncompactInner ||
                         kind == CaseKind::NoncompactOuterOdd || kind == CaseKind::NoncompactEven;
    if (rational_base && d != 1)
        throw std::invalid_argument("index_upper_bound: k = Q cases require d = 1");
    if (!rational_base && d < 2)
        throw std::invalid_argument("index_upper_bound: cocompact cases require d >= 2");
    double t1 = std::pow(4.0, card_t1);
    double rr = std::pow(2.0, card_r);
    switch (kind) {
        case CaseKind::CompactOddRank: return std::pow(2.0, d + 1) * t1 * h_l;
        case CaseKind::CompactEvenRank: return std::pow(2.0, 2 * d - 1) * rr * t1 * h_l;
        case CaseKind::Triality: return std::pow(2.0, 3 * d + 1) * rr * t1 * h_l;
        case CaseKind::NoncompactInner: return t1;
        case CaseKind::NoncompactOuterOdd: return 8.0 * t1 * h_l;
        case CaseKind::NoncompactEven: return 4.0 * rr * t1 * h_l;
    }
    throw std::logic_error("index_upper_bound: unreachable");
}

namespace {

double log_a_factor(CaseKind kind, int r) {
    double log_c = prasad_constant(r).log_value;
    double log_12_pi = std::log(12.0 / M_PI);
    switch (kind) {
        case CaseKind::CompactOddRank: return std::log(0.5) + 2.0 * log_12_pi + log_c;
        case CaseKind::CompactEvenRank: return std::log(0.25) + 2.0 * log_12_pi + log_c;
        case CaseKind::Triality: return std::log(0.125) + 3.0 * log_12_pi + log_c;
        default: throw std::logic_error("log_a_factor: cocompact cases only");
    }
}

ErrBounded from_log_generic(double lv) {
    return ErrBounded::from_log(lv, 2e-15 * (1.0 + std::fabs(lv)));
}

}  // namespace

ErrBounded covolume_lower_bound(CaseKind kind, int r, int d, double d_k,
                                std::optional<double> d_l, const LowerBoundOptions& lb) {
    validate_case_rank(kind, r);
    if (!(d_k >= 1)) throw std::invalid_argument("covolume_lower_bound: D_k must be >= 1");
    if (d_l && !(*d_l >= std::pow(d_k, kind == CaseKind::Triality ? 3.0 : 2.0) * (1 - 1e-9)))
        throw std::invalid_argument("covolume_lower_bound: D_l below D_k^[l:k]");
    double log_dk = std::log(d_k);
    double log_dl = d_l ? std::log(*d_l) : 0.0;
    double log_c = prasad_constant(r).log_value;
    double lv = 0.0;
    switch (kind) {
        case CaseKind::CompactOddRank: {
            if (d < 2) throw std::invalid_argument("cocompact case requires d >= 2");
            if (lb.h) {
                double ratio = d_l ? (r - 0.5) * (log_dl - 2.0 * log_dk) : 0.0;
                lv = -(d + 1) * std::log(2.0) - std::log(*lb.h) +
                     (r * r - 0.5 * r) * log_dk + ratio + d * log_c;
            } else {
                double body = d_l ? (r * r - 2.5 * r + 1.0) * log_dk + (r - 1.5) * log_dl
                                  : (r * r - 0.5 * r - 2.0) * log_dk;
                lv = -std::log(32.0) + body + d * log_a_factor(kind, r);
            }
            break;
        }
        case CaseKind::CompactEvenRank: {
            if (d < 2) throw std::invalid_argument("cocompact case requires d >= 2");
            if (lb.h && lb.num_ramified) {
                double ratio = d_l ? (r - 0.5) * (log_dl - 2.0 * log_dk) : 0.0;
                lv = -(2 * d - 1) * std::log(2.0) - *lb.num_ramified * std::log(2.0) -
                     std::log(*lb.h) + (r * r - 0.5 * r) * log_dk + ratio + d * log_c;
            } else if (lb.h) {
                // 2^{#R} <= D_l / D_k^2 folded in
                double body = d_l ? (r * r - 2.5 * r + 3.0) * log_dk + (r - 1.5) * log_dl
                                  : (r * r - 0.5 * r) * log_dk;
                lv = -(2 * d - 1) * std::log(2.0) - std::log(*lb.h) + body + d * log_c;
            } else {
                double body = d_l ? (r * r - 2.5 * r + 3.0) * log_dk + (r - 2.5) * log_dl
                                  : (r * r - 0.5 * r - 2.0) * log_dk;
                lv = -std::log(8.0) + body + d * log_a_factor(kind, r);
            }
            break;
        }
        case CaseKind::Triality: {
            if (d < 2) throw std::invalid_argument("cocompact case requires d >= 2");
            if (lb.h && lb.num_ramified) {
                double ratio = d_l ? 3.5 * (log_dl - 3.0 * log_dk) : 0.0;
                lv = -(3 * d + 1) * std::log(2.0) - *lb.num_ramified * std::log(2.0) -
                     std::log(*lb.h) + 14.0 * log_dk + ratio + d * log_c;
            } else if (lb.h) {
                double ratio = d_l ? 2.5 * (log_dl - 3.0 * log_dk) : 0.0;
                lv = -(3 * d + 1) * std::log(2.0) - std::log(*lb.h) + 14.0 * log_dk + ratio +
                     d * log_c;
            } else {
                double body = d_l ? 6.5 * log_dk + 1.5 * log_dl : 11.0 * log_dk;
                lv = -std::log(32.0) + body + d * log_a_factor(kind, r);
            }
            break;
        }
        case CaseKind::NoncompactOuterOdd: {
            if (d != 1) throw std::invalid_argument("k = Q case requires d = 1");
            if (!d_l) throw std::invalid_argument("noncompact bounds need D_l");
            if (lb.h)
                lv = -std::log(8.0) - std::log(*lb.h) + (r - 0.5) * log_dl + log_c;
            else
                lv = -std::log(128.0) + 2.0 * std::log(12.0 / M_PI) + (r - 1.5) * log_dl + log_c;
            break;
        }
        case CaseKind::NoncompactEven: {
            if (d != 1) throw std::invalid_argument("k = Q case requires d = 1");
            if (!d_l) throw std::invalid_argument("noncompact bounds need D_l");
            if (lb.h && lb.num_ramified)
                lv = -std::log(4.0) - *lb.num_ramified * std::log(2.0) - std::log(*lb.h) +
                     (r - 0.5) * log_dl + log_c;
            else
                lv = -std::log(64.0) + 2.0 * std::log(12.0 / M_PI) + (r - 2.5) * log_dl + log_c;
            break;
        }
        case CaseKind::NoncompactInner:
            throw std::invalid_argument(
                "covolume_lower_bound: the inner case is the candidate, not a competitor");
    }
    return from_log_generic(lv);
}

ErrBounded elimination_target(CaseKind kind, int r, bool parity, const EvalOptions& opts) {
    validate_case_rank(kind == CaseKind::Triality ? CaseKind::CompactEvenRank : kind,
                       kind == CaseKind::Triality ? 4 : r);
    RankDim rd = RankDim::from_rank(r);
    if (case_is_compact(kind)) {
        if (parity) {
            // the sharp 1.17 bound on the zeta-side product backs the small-rank
            // cutoff lists; the asymptotic ranks use the generic bound of 2
            double b = r <= 14 ? 1.17 : 2.0;
            double lv = std::log(b) + (r * r - 0.5 * r) * std::log(5.0) +
                        (r - 0.5) * std::log(11.0) + 2.0 * prasad_constant(r).log_value -
                        std::log(2.0);
            return from_log_generic(lv);
        }
        ErrBounded mu = prasad_covolume(minimal_candidate_pair(rd, Cocompactness::Compact), rd,
                                        minimal_candidate_profile(rd, Cocompactness::Compact), opts);
        return mu / ErrBounded::exact_rational(BigRat(2));
    }
    if (kind == CaseKind::NoncompactEven) {
        if (parity) {
            double lv = (r - 0.5) * std::log(3.0) + prasad_constant(r).log_value;
            return from_log_generic(lv);
        }
        ErrBounded mu = prasad_covolume(minimal_candidate_pair(rd, Cocompactness::Noncompact), rd,
                                        minimal_candidate_profile(rd, Cocompactness::Noncompact),
                                        opts);
        return mu / ErrBounded::exact_rational(BigRat(2));
    }
    // noncompact odd rank
    int m = (r - 1) / 2;
    if (parity) {
        double lv;
        if (m % 2 == 0)
            lv = std::log(2.0) + prasad_constant(r).log_value;
        else
            lv = (r - 0.5) * std::log(4.0) - std::log(3.0) + prasad_constant(r).log_value;
        return from_log_generic(lv);
    }
    ErrBounded mu = prasad_covolume(minimal_candidate_pair(rd, Cocompactness::Noncompact), rd,
                                    minimal_candidate_profile(rd, Cocompactness::Noncompact), opts);
    long index = minimal_index_constants(rd, Cocompactness::Noncompact).index;
    return mu / ErrBounded::exact_rational(BigRat(index));
}

Cutoff discriminant_cutoff(CaseKind kind, int r, int d, const ErrBounded& target,
                           CutoffVariable which, double d_k_fixed, const LowerBoundOptions& lb) {
    auto bound_log = [&](double x) {
        if (which == CutoffVariable::Dk)
            return covolume_lower_bound(kind, r, d, x, std::nullopt, lb).log_value;
        double floor_dl = std::pow(d_k_fixed, kind == CaseKind::Triality ? 3.0 : 2.0);
        return covolume_lower_bound(kind, r, d, d_k_fixed, std::max(x, floor_dl), lb).log_value;
    };
    // the bounds are monotone in the free discriminant; assert rather than assume
    if (!(bound_log(2.0) < bound_log(1e9)))
        throw std::logic_error("discriminant_cutoff: bound is not increasing");

    double lo = 1.0, hi = 2.0;
    while (bound_log(hi) <= target.log_value) {
        hi *= 2.0;
        if (hi > 1e300) throw std::logic_error("discriminant_cutoff: no finite cutoff");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (bound_log(mid) <= target.log_value) lo = mid;
        else hi = mid;
    }
    Cutoff c;
    c.threshold = 0.5 * (lo + hi);
    long long fl = static_cast<long long>(std::floor(c.threshold));
    // integer bisection safeguard against floating-point edge effects
    while (fl > 0 && bound_log(static_cast<double>(fl)) > target.log_value) --fl;
    while (bound_log(static_cast<double>(fl + 1)) <= target.log_value) ++fl;
    c.floor_int = fl;
    return c;
}

const std::vector<NamedBound>& named_bounds() {
    static const std::vector<NamedBound> table = {
        {"totally-real-min-disc-deg>=7", 9.3, "Odlyzko unconditional discriminant bounds, table 4"},
        {"totally-real-min-disc-deg>=5", 6.5, "Odlyzko unconditional discriminant bounds"},
        {"deg9-real-place-min-disc", std::pow(6.1, 9.0), "Odlyzko bound tables (degree 9)"},
        {"deg10-sig(2,4)-over-quintic-min-disc", 1332031009.0,
         "Selmer-style minima of relative quadratic extensions of totally real quintic fields"},
        {"deg8-sig(2,3)-over-quartic-min-disc", 4286875.0,
         "class-field enumeration of quadratic extensions of totally real quartic fields"},
        {"max-h-quartic-sig(2,1)-disc<=28662", 3.0, "quartic field tables"},
        {"max-h-deg6-real-place-disc<=445619", 1.0, "sextic field tables"},
    };
    return table;
}

double odlyzko_totally_real_lb(int d) {
    if (d >= 7) return std::pow(9.3, d);
    if (d >= 5) return std::pow(6.5, d);
    return 0.0;
}

double min_disc_deg9_with_real_place() { return std::pow(6.1, 9.0); }
double min_disc_deg10_sig24_over_quintic() { return 1332031009.0; }
double min_disc_deg8_sig23_over_quartic() { return 4286875.0; }
int max_h_quartic_sig21_below_28662() { return 3; }
int max_h_deg6_real_below_445619() { return 1; }

ErrBounded growth_ratio(int n, const EvalOptions& opts) {
    RankDim rd = RankDim::from_dim(n);
    return vol_compact_minimal(rd, opts) / vol_noncompact_minimal(rd, opts);
}

}  // namespace orbvol
