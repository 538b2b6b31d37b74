#include "orbvol/eliminate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace orbvol {

namespace {

struct WorkPair {
    const NumberField* k;
    const NumberField* l;
    bool is_candidate = false;  // the pair whose normalizer realizes the minimum
    int num_ramified_ub = -1;   // upper bound on #R when computable
};

std::string fmt2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

std::string fmt_sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

// number of primes of k above p (from the splitting type)
int primes_above(const NumberField& k, std::uint64_t p) {
    return static_cast<int>(k.splitting_at(p).factors.size());
}

// upper bound for #R: for each rational prime p with p^a || N(d_{l/k}),
// at most min(g_p(k), a) places of k above p can ramify in l.
int ramified_places_upper_bound(const NumberField& k, const NumberField& l, int rel) {
    BigInt dk_pow = 1;
    for (int i = 0; i < rel; ++i) dk_pow *= k.disc;
    if (l.disc % dk_pow != 0) return -1;
    BigInt n = l.disc / dk_pow;
    int total = 0;
    for (std::uint64_t p = 2; n > 1; p = (p == 2 ? 3 : p + 2)) {
        BigInt bp(static_cast<unsigned long>(p));
        if (bp * bp > n) {
            if (!n.fits_ulong_p()) return -1;
            total += std::min(primes_above(k, n.get_ui()), 1);
            break;
        }
        int a = 0;
        while (n % bp == 0) {
            n /= bp;
            ++a;
        }
        if (a > 0) total += std::min(primes_above(k, p), a);
    }
    return total;
}

// class-number caps established by field-table enumeration: every field of
// the given family with discriminant below `domain` has h <= cap
std::optional<double> table_h_cap(CaseKind kind, int ell_degree, double threshold) {
    struct Cap { double domain; double cap; };
    std::vector<Cap> caps;
    if (kind == CaseKind::Triality) {
        if (ell_degree == 6)
            caps = {{445619.0, static_cast<double>(max_h_deg6_real_below_445619())}};
    } else if (ell_degree == 4) {
        // quartic fields of signature (2,1)
        caps = {{2064.0, 1.0}, {5893.0, 1.0},
                {28662.0, static_cast<double>(max_h_quartic_sig21_below_28662())}};
    } else if (kind == CaseKind::CompactOddRank && ell_degree == 6) {
        // sextic fields of signature (2,2)
        caps = {{409830.0, 1.0}};
    }
    std::optional<double> best;
    for (const auto& c : caps)
        if (std::floor(threshold) <= c.domain && (!best || c.cap < *best)) best = c.cap;
    return best;
}

int nc_for_case(CaseKind kind) {
    switch (kind) {
        case CaseKind::CompactOddRank:
        case CaseKind::NoncompactInner:
        case CaseKind::NoncompactOuterOdd: return 4;
        default: return 2;
    }
}

double table_h_or_bs(const NumberField& l, int d, CaseKind kind) {
    if (l.class_number) return static_cast<double>(*l.class_number);
    if (kind == CaseKind::Triality) return h_bound_for_ell_degree(l.disc.get_d(), 3 * d);
    return h_ell_bound(l.disc.get_d(), d);
}

void note_step(EliminationReport& rep, std::string name, std::string detail) {
    rep.steps.push_back({std::move(name), std::move(detail)});
}

void finish_pair(EliminationReport& rep, const WorkPair& wp, const std::string& stage,
                 const std::string& inequality, double margin) {
    for (auto& pr : rep.pairs) {
        if (pr.k_label == wp.k->label && pr.l_label == wp.l->label && pr.eliminated_at.empty()) {
            pr.eliminated_at = stage;
            pr.inequality = inequality;
            pr.margin_log = margin;
            return;
        }
    }
}

void add_pair_record(EliminationReport& rep, const WorkPair& wp) {
    PairRecord pr;
    pr.k_label = wp.k->label;
    pr.l_label = wp.l->label;
    pr.l_disc = wp.l->disc.get_str();
    rep.pairs.push_back(pr);
}

int required_s1(CaseKind kind, int d) {
    return kind == CaseKind::CompactOddRank || kind == CaseKind::NoncompactOuterOdd
               ? 2
               : (kind == CaseKind::NoncompactEven ? 0 : 2 * d - 2);
}

// ---------------------------------------------------------------------------
// cocompact driver (compact odd/even rank and triality)

EliminationReport eliminate_cocompact(CaseKind kind, int r, const FieldTable& table,
                                      const EliminationOptions& opt) {
    EliminationReport rep;
    rep.kind = kind;
    rep.r = r;
    rep.parity = opt.parity;
    rep.target = elimination_target(kind, r, opt.parity, opt.eval);
    note_step(rep, "target", "log mu(H/Gamma_cand) <= " + fmt_sci(rep.target.log_value) +
                                 (opt.parity ? " (parity bound)" : " (evaluated covolume)"));

    const int rel = kind == CaseKind::Triality ? 3 : 2;

    // stage 1: degree-by-degree cutoffs for D_k
    std::vector<const NumberField*> ks;
    bool tail_closed = false;
    for (int d = 2; d <= opt.max_degree; ++d) {
        Cutoff c = discriminant_cutoff(kind, r, d, rep.target, CutoffVariable::Dk);
        DegreeRecord dr;
        dr.d = d;
        dr.dk_threshold = c.threshold;
        dr.dk_cutoff = c.floor_int;
        double odl = odlyzko_totally_real_lb(d);
        if (odl > 0.0 && odl > c.threshold) {
            dr.note = "excluded: smallest totally real degree-" + std::to_string(d) +
                      " discriminant exceeds the cutoff (table bound " + fmt_sci(odl) + ")";
            // growth check: cutoffs grow by at most exp(-log a / E) per degree,
            // the discriminant floor by 9.3 (resp. 6.5); once ahead, ahead forever
            double log_a = [&] {
                switch (kind) {
                    case CaseKind::CompactOddRank:
                        return std::log(0.5) + 2 * std::log(12 / M_PI) +
                               prasad_constant(r).log_value;
                    case CaseKind::CompactEvenRank:
                        return std::log(0.25) + 2 * std::log(12 / M_PI) +
                               prasad_constant(r).log_value;
                    default:
                        return std::log(0.125) + 3 * std::log(12 / M_PI) +
                               prasad_constant(4).log_value;
                }
            }();
            double ee = kind == CaseKind::Triality ? 11.0
                                                   : static_cast<double>(r) * r - 0.5 * r - 2.0;
            double growth = std::exp(std::max(0.0, -log_a) / ee);
            double floor_growth = d >= 7 ? 9.3 : 6.5;
            if (growth < floor_growth) {
                dr.note += "; all higher degrees excluded (cutoff growth " + fmt2(growth) +
                           " per degree vs discriminant growth " + fmt2(floor_growth) + ")";
                tail_closed = true;
            }
        } else {
            for (const auto& f : table.records()) {
                if (f.degree != d || !f.totally_real() || f.is_rationals()) continue;
                if (f.disc > BigInt(static_cast<long>(dr.dk_cutoff))) continue;
                dr.candidates.push_back(f.label);
                ks.push_back(&f);
            }
            if (dr.candidates.empty()) dr.note = "no fields of this degree within the cutoff";
        }
        rep.degrees.push_back(dr);
        if (tail_closed) break;
    }
    if (!tail_closed)
        rep.warnings.push_back("degree scan stopped at max_degree without a closing argument");
    rep.candidate_k_count = static_cast<int>(ks.size());

    // stage 2: per-k cutoff for D_l and pair assembly, with the staged
    // class-number caps from the field tables applied to a fixpoint
    std::vector<WorkPair> pairs;
    for (const NumberField* k : ks) {
        Cutoff c = discriminant_cutoff(kind, r, k->degree, rep.target, CutoffVariable::DlGivenDk,
                                       k->disc.get_d());
        int ell_deg = rel * k->degree;
        for (int round = 0; round < 4; ++round) {
            std::optional<double> cap = table_h_cap(kind, ell_deg, c.threshold);
            if (!cap) break;
            LowerBoundOptions lbo;
            lbo.h = *cap;
            Cutoff refined = discriminant_cutoff(kind, r, k->degree, rep.target,
                                                 CutoffVariable::DlGivenDk, k->disc.get_d(), lbo);
            if (refined.threshold >= c.threshold - 0.005) break;
            note_step(rep, "class-number-cap",
                      "k=" + k->label + ": fields below " + fmt2(c.threshold) + " have h <= " +
                          fmt2(*cap) + ", refining D_l cutoff to " + fmt2(refined.threshold));
            c = refined;
        }
        double min_possible = std::pow(k->disc.get_d(), rel);
        std::ostringstream detail;
        detail << "k=" << k->label << " D_l <= " << fmt2(c.threshold);
        if (c.threshold < min_possible) {
            detail << " < D_k^" << rel << " = " << fmt_sci(min_possible)
                   << ": no admissible extension can exist";
            note_step(rep, "field-cutoff", detail.str());
            continue;
        }
        // named external bounds for degrees beyond the table
        int ell_degree = rel * k->degree;
        double named_floor = 0.0;
        std::string named_src;
        if (kind == CaseKind::CompactOddRank && ell_degree == 8) {
            named_floor = min_disc_deg8_sig23_over_quartic();
            named_src = "deg8-sig(2,3)-over-quartic-min-disc";
        } else if (kind == CaseKind::CompactOddRank && ell_degree == 10) {
            named_floor = min_disc_deg10_sig24_over_quintic();
            named_src = "deg10-sig(2,4)-over-quintic-min-disc";
        } else if (kind == CaseKind::Triality && k->degree == 3) {
            named_floor = min_disc_deg9_with_real_place();
            named_src = "deg9-real-place-min-disc";
        }
        if (named_floor > 0.0 && c.threshold < named_floor) {
            detail << " below the named bound " << named_src << " = " << fmt_sci(named_floor)
                   << ": excluded";
            note_step(rep, "field-cutoff", detail.str());
            continue;
        }
        // collect table candidates
        int found = 0;
        for (const auto& l : table.records()) {
            if (l.degree != ell_degree) continue;
            if (kind != CaseKind::Triality && l.s1 != required_s1(kind, k->degree)) continue;
            if (kind == CaseKind::Triality && l.s1 < 1) continue;
            if (l.disc.get_d() > c.threshold) continue;
            bool over_k = false;
            if (l.tower) {
                std::int64_t m = l.tower->m;
                std::int64_t disc_of_base = (m % 4 + 4) % 4 == 1 ? m : 4 * m;
                over_k = k->degree == 2 && BigInt(disc_of_base) == k->disc;
            } else if (l.over_label) {
                over_k = *l.over_label == k->label;
            }
            if (!over_k) {
                note_step(rep, "field-cutoff",
                          "candidate " + l.label + " (disc " + l.disc.get_str() +
                              ") is within the cutoff for k=" + k->label +
                              " but is not an extension of it");
                continue;
            }
            WorkPair wp;
            wp.k = k;
            wp.l = &l;
            wp.is_candidate = kind != CaseKind::Triality && k->label == "k0" && l.label == "l0";
            wp.num_ramified_ub = ramified_places_upper_bound(*k, l, rel);
            pairs.push_back(wp);
            ++found;
        }
        detail << ": " << found << " table candidate(s)";
        note_step(rep, "field-cutoff", detail.str());
        if (found == 0)
            note_step(rep, "field-cutoff",
                      "k=" + k->label + " eliminated: no extension in the table below the cutoff");
    }
    for (const auto& wp : pairs) add_pair_record(rep, wp);

    // stage 3: class-number refinement
    if (kind == CaseKind::CompactEvenRank && r == 4) {
        // audit trail of the staged class-number bounds for rank 4
        note_step(rep, "class-number",
                  "quartic (2,1) fields below 28662 have h <= " +
                      std::to_string(max_h_quartic_sig21_below_28662()) +
                      " (table bound), below 2064 have h = 1");
    }
    std::vector<WorkPair> stage3;
    for (const auto& wp : pairs) {
        LowerBoundOptions lbo;
        lbo.h = table_h_or_bs(*wp.l, wp.k->degree, kind);
        ErrBounded lbv = covolume_lower_bound(kind, r, wp.k->degree, wp.k->disc.get_d(),
                                              wp.l->disc.get_d(), lbo);
        if (!wp.is_candidate && lbv.log_value > rep.target.log_value) {
            finish_pair(rep, wp, "class-number", "index bound with h_l known",
                        lbv.log_value - rep.target.log_value);
        } else {
            stage3.push_back(wp);
        }
    }

    // stage 4: single-ramified-place refinement (even rank and triality)
    std::vector<WorkPair> stage4;
    for (const auto& wp : stage3) {
        if (kind == CaseKind::CompactOddRank || wp.num_ramified_ub < 0) {
            stage4.push_back(wp);
            continue;
        }
        LowerBoundOptions lbo;
        lbo.h = table_h_or_bs(*wp.l, wp.k->degree, kind);
        lbo.num_ramified = wp.num_ramified_ub;
        ErrBounded lbv = covolume_lower_bound(kind, r, wp.k->degree, wp.k->disc.get_d(),
                                              wp.l->disc.get_d(), lbo);
        if (!wp.is_candidate && lbv.log_value > rep.target.log_value) {
            finish_pair(rep, wp, "ramification", "index bound with #R = " +
                                                     std::to_string(wp.num_ramified_ub),
                        lbv.log_value - rep.target.log_value);
        } else {
            stage4.push_back(wp);
        }
    }

    for (const auto& wp : stage4) rep.pre_unit_survivors.emplace_back(wp.k->label, wp.l->label);

    // stage 5: unit-image refinement
    std::vector<WorkPair> stage5;
    for (const auto& wp : stage4) {
        if (wp.is_candidate || kind == CaseKind::Triality) {
            stage5.push_back(wp);
            continue;
        }
        if (!wp.l->tower || wp.l->fund_units.size() != 2) {
            rep.warnings.push_back("unit refinement skipped for " + wp.l->label +
                                   ": table lacks tower units");
            stage5.push_back(wp);
            continue;
        }
        int nc = nc_for_case(kind);
        FieldPair fp = FieldPair::outer(*wp.k, *wp.l);
        int order = unit_image_order(fp, nc,
                                     nc == 4 ? UnitCondition::OddRankCompact
                                             : UnitCondition::EvenRankCompact);
        double h = table_h_or_bs(*wp.l, wp.k->degree, kind);
        int n_ram = std::max(wp.num_ramified_ub, 0);
        // [Gamma:Lambda] <= order * h * 4^{#T1} * (2^{#R} in even rank) and the
        // local-factor product absorbs 4^{#T1}
        double denom = order * h * (kind == CaseKind::CompactEvenRank ? std::pow(2.0, n_ram) : 1.0);
        double lv = 0.5 * (2.0 * r * r - r) * std::log(wp.k->disc.get_d()) +
                    (r - 0.5) * (std::log(wp.l->disc.get_d()) -
                                 rel * std::log(wp.k->disc.get_d())) +
                    wp.k->degree * prasad_constant(r).log_value - std::log(denom);
        if (lv > rep.target.log_value) {
            finish_pair(rep, wp, "unit-image", "index bound with #(U_A/U^nc) = " +
                                                   std::to_string(order),
                        lv - rep.target.log_value);
        } else {
            stage5.push_back(wp);
        }
    }

    for (const auto& wp : stage5) rep.survivors.emplace_back(wp.k->label, wp.l->label);
    std::sort(rep.survivors.begin(), rep.survivors.end());
    std::sort(rep.pre_unit_survivors.begin(), rep.pre_unit_survivors.end());
    return rep;
}

// ---------------------------------------------------------------------------
// noncompact drivers (k = Q)

EliminationReport eliminate_noncompact_odd(CaseKind kind, int r, const FieldTable& table,
                                           const EliminationOptions& opt) {
    EliminationReport rep;
    rep.kind = kind;
    rep.r = r;
    rep.parity = opt.parity;
    if (r == 3)
        throw std::invalid_argument(
            "the rank-3 noncompact case is settled by geometric methods and is out of scope");
    rep.target = elimination_target(kind, r, opt.parity, opt.eval);
    note_step(rep, "target", "log mu(H/Gamma_cand) <= " + fmt_sci(rep.target.log_value));
    const NumberField& q = table.by_label("Q");

    // candidates: outer forms with l a real quadratic field
    Cutoff c = discriminant_cutoff(CaseKind::NoncompactOuterOdd, r, 1, rep.target,
                                   CutoffVariable::DlGivenDk, 1.0);
    DegreeRecord dr;
    dr.d = 1;
    dr.dk_threshold = 1.0;
    dr.dk_cutoff = 1;
    dr.note = "outer competitors need D_l <= " + fmt2(c.threshold);
    rep.degrees.push_back(dr);
    rep.candidate_k_count = 1;

    std::vector<WorkPair> pairs;
    for (const auto& l : table.records()) {
        if (l.degree != 2 || l.s1 != 2) continue;
        if (l.disc.get_d() > c.threshold) continue;
        WorkPair wp;
        wp.k = &q;
        wp.l = &l;
        pairs.push_back(wp);
        add_pair_record(rep, wp);
    }
    note_step(rep, "field-cutoff",
              "outer D_l cutoff " + fmt2(c.threshold) + ": " + std::to_string(pairs.size()) +
                  " real quadratic candidate(s)");

    std::vector<WorkPair> stage3;
    for (const auto& wp : pairs) {
        LowerBoundOptions lbo;
        lbo.h = table_h_or_bs(*wp.l, 1, kind);
        ErrBounded lbv =
            covolume_lower_bound(CaseKind::NoncompactOuterOdd, r, 1, 1.0, wp.l->disc.get_d(), lbo);
        if (lbv.log_value > rep.target.log_value) {
            finish_pair(rep, wp, "class-number", "index bound with h_l known",
                        lbv.log_value - rep.target.log_value);
        } else {
            stage3.push_back(wp);
        }
    }
    for (const auto& wp : stage3) rep.pre_unit_survivors.emplace_back(wp.k->label, wp.l->label);
    for (const auto& wp : stage3) rep.survivors.emplace_back(wp.k->label, wp.l->label);

    // the inner candidate itself
    rep.survivors.emplace_back("Q", "Q");
    rep.pre_unit_survivors.emplace_back("Q", "Q");
    PairRecord inner;
    inner.k_label = "Q";
    inner.l_label ="Q";
    inner.l_disc = "1";
    rep.pairs.push_back(inner);
    if (r % 4 == 3)
        note_step(rep, "lambda-minimality",
                  "a non-split place is forced; lambda_(p)/4 >= lambda_(2) for p != 2, so the "
                  "minimum puts the special place at (2)");
    std::sort(rep.survivors.begin(), rep.survivors.end());
    std::sort(rep.pre_unit_survivors.begin(), rep.pre_unit_survivors.end());
    return rep;
}

EliminationReport eliminate_noncompact_even(int r, const FieldTable& table,
                                            const EliminationOptions& opt) {
    EliminationReport rep;
    rep.kind = CaseKind::NoncompactEven;
    rep.r = r;
    rep.parity = opt.parity;
    if (r < 6)
        throw std::invalid_argument(
            "the rank-4 noncompact case is settled by geometric methods and is out of scope");
    rep.target = elimination_target(CaseKind::NoncompactEven, r, opt.parity, opt.eval);
    note_step(rep, "target", "log mu(H/Gamma_cand) <= " + fmt_sci(rep.target.log_value));
    const NumberField& q = table.by_label("Q");

    Cutoff c = discriminant_cutoff(CaseKind::NoncompactEven, r, 1, rep.target,
                                   CutoffVariable::DlGivenDk, 1.0);
    rep.candidate_k_count = 1;
    note_step(rep, "field-cutoff", "imaginary quadratic D_l <= " + fmt2(c.threshold));

    std::vector<WorkPair> pairs;
    for (const auto& l : table.records()) {
        if (l.degree != 2 || l.s1 != 0) continue;
        if (l.disc.get_d() > c.threshold) continue;
        WorkPair wp;
        wp.k = &q;
        wp.l = &l;
        wp.is_candidate = l.label == "l1";
        wp.num_ramified_ub = ramified_places_upper_bound(q, l, 2);
        pairs.push_back(wp);
        add_pair_record(rep, wp);
    }

    // refinement with known #R and h
    std::vector<WorkPair> stage4;
    for (const auto& wp : pairs) {
        LowerBoundOptions lbo;
        lbo.h = table_h_or_bs(*wp.l, 1, CaseKind::NoncompactEven);
        lbo.num_ramified = std::max(wp.num_ramified_ub, 0);
        ErrBounded lbv =
            covolume_lower_bound(CaseKind::NoncompactEven, r, 1, 1.0, wp.l->disc.get_d(), lbo);
        if (!wp.is_candidate && lbv.log_value > rep.target.log_value) {
            finish_pair(rep, wp, "ramification", "index bound with #R and h_l known",
                        lbv.log_value - rep.target.log_value);
        } else {
            stage4.push_back(wp);
        }
    }
    for (const auto& wp : stage4) rep.pre_unit_survivors.emplace_back(wp.k->label, wp.l->label);

    // unit refinement through the torsion order
    std::vector<WorkPair> stage5;
    for (const auto& wp : stage4) {
        if (wp.is_candidate) {
            stage5.push_back(wp);
            continue;
        }
        FieldPair fp = FieldPair::outer(q, *wp.l);
        int order = unit_image_order(fp, 2, UnitCondition::ImaginarySquare);
        double h = table_h_or_bs(*wp.l, 1, CaseKind::NoncompactEven);
        double denom = order * h * std::pow(2.0, std::max(wp.num_ramified_ub, 0));
        double lv = (r - 0.5) * std::log(wp.l->disc.get_d()) + prasad_constant(r).log_value -
                    std::log(denom);
        if (lv > rep.target.log_value) {
            finish_pair(rep, wp, "unit-image",
                        "index bound with #(U_A/U^2) = " + std::to_string(order),
                        lv - rep.target.log_value);
        } else {
            stage5.push_back(wp);
        }
    }

    for (const auto& wp : stage5) rep.survivors.emplace_back(wp.k->label, wp.l->label);
    std::sort(rep.survivors.begin(), rep.survivors.end());
    std::sort(rep.pre_unit_survivors.begin(), rep.pre_unit_survivors.end());
    return rep;
}

}  // namespace

EliminationReport eliminate(CaseKind kind, int r, const FieldTable& table,
                            const EliminationOptions& options) {
    validate_case_rank(kind, r);
    switch (kind) {
        case CaseKind::CompactOddRank:
        case CaseKind::CompactEvenRank:
        case CaseKind::Triality:
            return eliminate_cocompact(kind, r, table, options);
        case CaseKind::NoncompactInner:
        case CaseKind::NoncompactOuterOdd:
            return eliminate_noncompact_odd(kind, r, table, options);
        case CaseKind::NoncompactEven:
            return eliminate_noncompact_even(r, table, options);
    }
    throw std::logic_error("eliminate: unreachable");
}

std::vector<std::pair<std::string, std::string>> expected_paper_survivors(CaseKind kind, int r) {
    switch (kind) {
        case CaseKind::CompactOddRank:
        case CaseKind::CompactEvenRank:
            return {{"k0", "l0"}};
        case CaseKind::Triality:
            return {};
        case CaseKind::NoncompactInner:
        case CaseKind::NoncompactOuterOdd:
            return {{"Q", "Q"}};
        case CaseKind::NoncompactEven:
            return {{"Q", "l1"}};
    }
    (void)r;
    return {};
}

bool EliminationReport::matches(
    const std::vector<std::pair<std::string, std::string>>& expected) const {
    auto e = expected;
    std::sort(e.begin(), e.end());
    return survivors == e;
}

std::string EliminationReport::to_text() const {
    std::ostringstream out;
    out << "case " << case_name(kind) << "  r=" << r << (parity ? "  [parity targets]" : "")
        << "\n";
    out << "target log mu = " << target.log_value << " (err " << target.log_err << ")\n";
    for (const auto& d : degrees) {
        out << "  d=" << d.d << "  D_k <= " << fmt2(d.dk_threshold) << " (floor " << d.dk_cutoff
            << ")";
        if (!d.candidates.empty()) {
            out << "  candidates:";
            for (const auto& c : d.candidates) out << " " << c;
        }
        if (!d.note.empty()) out << "  [" << d.note << "]";
        out << "\n";
    }
    out << "  candidate fields k: " << candidate_k_count << "\n";
    for (const auto& s : steps) out << "  step " << s.name << ": " << s.detail << "\n";
    for (const auto& p : pairs) {
        out << "  pair (" << p.k_label << ", " << p.l_label << ") disc_l=" << p.l_disc;
        if (p.eliminated_at.empty()) out << "  SURVIVES";
        else
            out << "  eliminated at " << p.eliminated_at << " [" << p.inequality << ", margin "
                << fmt_sci(p.margin_log) << "]";
        out << "\n";
    }
    for (const auto& w : warnings) out << "  warning: " << w << "\n";
    out << "  survivors:";
    for (const auto& [k, l] : survivors) out << " (" << k << ", " << l << ")";
    out << "\n";
    return out.str();
}

nlohmann::ordered_json EliminationReport::to_json() const {
    nlohmann::ordered_json j;
    j["case"] = case_name(kind);
    j["r"] = r;
    j["parity"] = parity;
    j["target_log"] = target.log_value;
    j["target_err"] = target.log_err;
    j["degrees"] = nlohmann::ordered_json::array();
    for (const auto& d : degrees) {
        nlohmann::ordered_json dj;
        dj["d"] = d.d;
        dj["dk_threshold"] = d.dk_threshold;
        dj["dk_cutoff"] = d.dk_cutoff;
        dj["candidates"] = d.candidates;
        dj["note"] = d.note;
        j["degrees"].push_back(dj);
    }
    j["candidate_k_count"] = candidate_k_count;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : steps) j["steps"].push_back({{"name", s.name}, {"detail", s.detail}});
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
        nlohmann::ordered_json pj;
        pj["k"] = p.k_label;
        pj["l"] = p.l_label;
        pj["disc_l"] = p.l_disc;
        pj["eliminated_at"] = p.eliminated_at;
        pj["inequality"] = p.inequality;
        pj["margin_log"] = p.margin_log;
        j["pairs"].push_back(pj);
    }
    j["warnings"] = warnings;
    j["pre_unit_survivors"] = nlohmann::ordered_json::array();
    for (const auto& [k, l] : pre_unit_survivors) j["pre_unit_survivors"].push_back({k, l});
    j["survivors"] = nlohmann::ordered_json::array();
    for (const auto& [k, l] : survivors) j["survivors"].push_back({k, l});
    return j;
}

}  // namespace orbvol
