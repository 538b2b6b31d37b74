#ifndef ORBVOL_ELIMINATE_HPP
#define ORBVOL_ELIMINATE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orbvol/bounds.hpp"

namespace orbvol {

struct EliminationOptions {
    bool parity = false;     // use the literal published target bounds
    EvalOptions eval;
    int max_degree = 24;
};

struct DegreeRecord {
    int d = 0;
    double dk_threshold = 0.0;
    long long dk_cutoff = 0;
    std::vector<std::string> candidates;
    std::string note;
};

struct PairRecord {
    std::string k_label, l_label;
    std::string l_disc;
    std::string eliminated_at;  // stage name, empty for survivors
    std::string inequality;
    double margin_log = 0.0;    // bound - target in log space when eliminated
};

struct StepRecord {
    std::string name;
    std::string detail;
};

struct EliminationReport {
    CaseKind kind = CaseKind::CompactOddRank;
    int r = 0;
    bool parity = false;
    ErrBounded target;
    std::vector<DegreeRecord> degrees;
    std::vector<PairRecord> pairs;
    std::vector<StepRecord> steps;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> survivors;  // (k, l) labels
    int candidate_k_count = 0;

    // survivors after every stage up to (but not including) the unit-image
    // refinement; used to audit the pre-refinement state
    std::vector<std::pair<std::string, std::string>> pre_unit_survivors;

    std::string to_text() const;
    nlohmann::ordered_json to_json() const;
    bool matches(const std::vector<std::pair<std::string, std::string>>& expected) const;
};

EliminationReport eliminate(CaseKind kind, int r, const FieldTable& table,
                            const EliminationOptions& options = {});

// the survivor sets established in the source analysis, keyed by case
std::vector<std::pair<std::string, std::string>> expected_paper_survivors(CaseKind kind, int r);

}  // namespace orbvol

#endif
