#ifndef ORBVOL_VOLUME_HPP
#define ORBVOL_VOLUME_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbvol/err_bounded.hpp"
#include "orbvol/fields.hpp"
#include "orbvol/lfun.hpp"

namespace orbvol {

// rank r >= 3 and the hyperbolic dimension n = 2r - 1
struct RankDim {
    int r = 0;
    int n = 0;

    static RankDim from_rank(int r);
    static RankDim from_dim(int n);  // n odd >= 5
};

// log C(r) = log[ (r-1)!/(2pi)^r * prod_{i<r} (2i-1)!/(2pi)^{2i} ]
ErrBounded prasad_constant(int r);

// lambda factor of a special parahoric at a rational prime with local type of
// the candidate's kind: (p^r - 1)(p^{r-1} - 1)/(p + 1), exact.
BigRat lambda_special(std::uint64_t p, int r);

// generic lower bound (2/3) (3 q_v / 4)^{r_v}
double lambda_lower_bound(double q_v, int r_v);

struct LocalFactorEntry {
    std::string place;     // label, e.g. "(2)"
    std::uint64_t q_v = 0; // residue size
    int r_v = 0;           // local rank
    ErrBounded lambda = ErrBounded::one();
};

struct LocalFactorProfile {
    std::vector<LocalFactorEntry> entries;
    std::vector<std::string> t_places;   // T
    std::vector<std::string> t1_places;  // T1, subset of T
    std::vector<std::string> r_places;   // ramified in l/k

    ErrBounded lambda_product() const;
    static LocalFactorProfile empty() { return {}; }
};

// mu(H/Lambda) by the covolume formula:
// D_k^{(2r^2-r)/2} (D_l / D_k^{[l:k]})^{(2r-1)/2} C(r)^{[k:Q]} * E(P)
ErrBounded prasad_covolume(const FieldPair& pair, const RankDim& rd,
                           const LocalFactorProfile& profile, const EvalOptions& opts = {});

// mu_H = 4 pi^{(n+1)/2} / ((n-1)/2)! * mu   (n odd)
ErrBounded mu_to_hyperbolic(const ErrBounded& mu, int n);

enum class Cocompactness { Compact, Noncompact };

// index profile of the minimal lattice's normalizer
struct IndexProfile {
    int nc = 0;       // 4 for odd rank, 2 for even rank
    int epsilon = 0;  // 1 for odd rank, 2 for even rank
    long q = 0;
    long q_prime = 0;
    long unit_image = 0;
    long index = 0;   // (q / q') * unit_image
};

IndexProfile minimal_index_constants(const RankDim& rd, Cocompactness c);

// the candidate pair and local profile realizing the minimum
FieldPair minimal_candidate_pair(const RankDim& rd, Cocompactness c);
LocalFactorProfile minimal_candidate_profile(const RankDim& rd, Cocompactness c);

// closed-form minimal volumes
ErrBounded vol_compact_minimal(const RankDim& rd, const EvalOptions& opts = {});
ErrBounded vol_noncompact_minimal(const RankDim& rd, const EvalOptions& opts = {});

// the same volumes through the covolume pipeline (formula + index + measure
// conversion); used to cross-validate the closed forms
ErrBounded vol_minimal_via_pipeline(const RankDim& rd, Cocompactness c,
                                    const EvalOptions& opts = {});

// which closed-form branch applies (for table output)
std::string noncompact_formula_case(int r);

}  // namespace orbvol

#endif
