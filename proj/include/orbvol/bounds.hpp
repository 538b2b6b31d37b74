#ifndef ORBVOL_BOUNDS_HPP
#define ORBVOL_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbvol/volume.hpp"

namespace orbvol {

enum class CaseKind {
    CompactOddRank,     // 2D_{2m+1}, k != Q
    CompactEvenRank,    // 2D_{2m},   k != Q
    Triality,           // 3,6D_4,    k != Q, r = 4
    NoncompactInner,    // 1D_{2m+1}, k = Q
    NoncompactOuterOdd, // 2D_{2m+1}, k = Q
    NoncompactEven,     // 2D_{2m},   k = Q
};

std::string case_name(CaseKind kind);
CaseKind case_from_name(const std::string& name);
bool case_is_compact(CaseKind kind);
// checks r parity/triality constraints
void validate_case_rank(CaseKind kind, int r);

// Brauer-Siegel specialization: h_l <= 16 (pi/12)^{2d} D_l for quadratic
// extensions l/k with [k:Q] = d, R_l >= 1/4.
double h_ell_bound(double d_l, int d);
// same bound with the degree of l given directly (triality uses 3d)
double h_bound_for_ell_degree(double d_l, int ell_degree);

// full Brauer-Siegel upper bound for h_l at parameter s > 1, signature
// (2, d-1) and regulator lower bound reg_lb
double brauer_siegel_bound(double s, int d, double d_l, double reg_lb);

// index bound [Gamma : Lambda] by case
double index_upper_bound(CaseKind kind, int d, int card_r, int card_t1, double h_l);

struct LowerBoundOptions {
    std::optional<double> h;            // known class number (enables the refined form)
    std::optional<int> num_ramified;    // known #R (even-rank/noncompact refinements)
};

// lower bound for mu(H/Gamma) of a competing lattice with the given field data;
// D_l omitted gives the D_k-only variant
ErrBounded covolume_lower_bound(CaseKind kind, int r, int d, double d_k,
                                std::optional<double> d_l,
                                const LowerBoundOptions& lb = {});

// upper bound on mu(H/Gamma_cand) used as the elimination target; parity mode
// reproduces the literal bounds (1.17 / 2 on the zeta part), otherwise the
// candidate covolume is evaluated
ErrBounded elimination_target(CaseKind kind, int r, bool parity, const EvalOptions& opts = {});

enum class CutoffVariable { Dk, DlGivenDk };

struct Cutoff {
    double threshold = 0.0;   // real solution of bound = target
    long long floor_int = 0;  // largest admissible integer discriminant
};

// largest free discriminant whose lower bound stays <= target; integer part by
// monotone bisection over integers
Cutoff discriminant_cutoff(CaseKind kind, int r, int d, const ErrBounded& target,
                           CutoffVariable which, double d_k_fixed = 0.0,
                           const LowerBoundOptions& lb = {});

// named external discriminant bounds used by the elimination driver
struct NamedBound {
    std::string name;
    double value;
    std::string source;
};
const std::vector<NamedBound>& named_bounds();

// unconditional lower bound for the discriminant of a totally real field of
// degree d (0 when no table bound is applied)
double odlyzko_totally_real_lb(int d);
double min_disc_deg9_with_real_place();
double min_disc_deg10_sig24_over_quintic();
double min_disc_deg8_sig23_over_quartic();
int max_h_quartic_sig21_below_28662();
int max_h_deg6_real_below_445619();

// Q(n) = vol_compact_minimal / vol_noncompact_minimal
ErrBounded growth_ratio(int n, const EvalOptions& opts = {});

}  // namespace orbvol

#endif
