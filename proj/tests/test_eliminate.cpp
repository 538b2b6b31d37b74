#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbvol/eliminate.hpp"

using namespace orbvol;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

EliminationReport run(CaseKind kind, int r, bool parity = false) {
    EliminationOptions opt;
    opt.parity = parity;
    opt.eval.tol = 1e-10;
    return eliminate(kind, r, builtin_table(), opt);
}

}  // namespace

TEST_CASE("compact odd rank 3: full pipeline") {
    for (bool parity : {false, true}) {
        EliminationReport rep = run(CaseKind::CompactOddRank, 3, parity);
        CAPTURE(parity);
        CHECK(rep.survivors == Pairs{{"k0", "l0"}});
        CHECK(rep.pre_unit_survivors == Pairs{{"k0", "l0"}, {"k0", "l400"}, {"k0", "l475"}});
        CHECK(rep.candidate_k_count == 14);
        CHECK(rep.matches(expected_paper_survivors(CaseKind::CompactOddRank, 3)));
    }
}

TEST_CASE("compact odd rank 3: parity cutoff audit") {
    EliminationReport rep = run(CaseKind::CompactOddRank, 3, true);
    REQUIRE(rep.degrees.size() >= 5);
    CHECK(rep.degrees[0].dk_cutoff == 22);
    CHECK(rep.degrees[1].dk_cutoff == 198);
    CHECK(rep.degrees[2].dk_cutoff == 1778);
    CHECK(rep.degrees[3].dk_cutoff == 15956);
    CHECK(rep.degrees[4].dk_cutoff == 143195);
    CHECK(rep.degrees[0].candidates.size() == 6);  // 5, 8, 12, 13, 17, 21
    CHECK(rep.degrees[1].candidates.size() == 4);  // 49, 81, 148, 169
    CHECK(rep.degrees[2].candidates.size() == 3);  // 725, 1125, 1600
    CHECK(rep.degrees[3].candidates.size() == 1);  // 14641
    CHECK(rep.degrees[4].candidates.empty());
}

TEST_CASE("compact odd rank: higher ranks go straight to the candidate") {
    for (int r : {5, 7, 15}) {
        EliminationReport rep = run(CaseKind::CompactOddRank, r);
        CAPTURE(r);
        CHECK(rep.survivors == Pairs{{"k0", "l0"}});
    }
}

TEST_CASE("compact even rank") {
    for (int r : {4, 6, 16}) {
        EliminationReport rep = run(CaseKind::CompactEvenRank, r);
        CAPTURE(r);
        CHECK(rep.survivors == Pairs{{"k0", "l0"}});
    }
    // the rank-4 run keeps 275/400/475/775 through the class-number stage and
    // needs the ramification and unit stages to finish
    EliminationReport rep4 = run(CaseKind::CompactEvenRank, 4);
    bool l775_seen = false, l775_killed_by_ramification = false;
    for (const auto& p : rep4.pairs) {
        if (p.l_label == "l775") {
            l775_seen = true;
            l775_killed_by_ramification = p.eliminated_at == "ramification";
        }
    }
    CHECK(l775_seen);
    CHECK(l775_killed_by_ramification);
}

TEST_CASE("triality search ends empty") {
    for (bool parity : {false, true}) {
        EliminationReport rep = run(CaseKind::Triality, 4, parity);
        CAPTURE(parity);
        CHECK(rep.survivors.empty());
        CHECK(rep.matches(expected_paper_survivors(CaseKind::Triality, 4)));
    }
}

TEST_CASE("noncompact odd rank") {
    for (int r : {5, 9, 13}) {  // r = 1 mod 4
        EliminationReport rep = run(CaseKind::NoncompactInner, r);
        CAPTURE(r);
        CHECK(rep.survivors == Pairs{{"Q", "Q"}});
    }
    for (int r : {7, 11, 15}) {  // r = 3 mod 4
        EliminationReport rep = run(CaseKind::NoncompactOuterOdd, r);
        CAPTURE(r);
        CHECK(rep.survivors == Pairs{{"Q", "Q"}});
    }
    CHECK_THROWS_AS(run(CaseKind::NoncompactOuterOdd, 3), std::invalid_argument);
}

TEST_CASE("noncompact even rank keeps only the discriminant-3 field") {
    for (int r : {6, 8, 10}) {
        EliminationReport rep = run(CaseKind::NoncompactEven, r);
        CAPTURE(r);
        CHECK(rep.survivors == Pairs{{"Q", "l1"}});
        CHECK(rep.matches(expected_paper_survivors(CaseKind::NoncompactEven, r)));
    }
    // r = 6: the Gaussian field survives the discriminant stages and is
    // removed by the unit-image refinement
    EliminationReport rep = run(CaseKind::NoncompactEven, 6);
    bool gauss_by_units = false;
    for (const auto& p : rep.pairs)
        if (p.l_label == "lm4" && p.eliminated_at == "unit-image") gauss_by_units = true;
    CHECK(gauss_by_units);
    CHECK_THROWS_AS(run(CaseKind::NoncompactEven, 4), std::invalid_argument);
}

TEST_CASE("soundness: the candidate pair is never eliminated") {
    for (int r : {3, 5, 7, 9, 11, 13, 15}) {
        CHECK(run(CaseKind::CompactOddRank, r).matches({{"k0", "l0"}}));
    }
    for (int r : {4, 6, 8, 10, 12, 14, 16}) {
        CHECK(run(CaseKind::CompactEvenRank, r).matches({{"k0", "l0"}}));
    }
    for (int r : {5, 7, 9, 11, 13, 15}) {
        CaseKind kind = r % 4 == 1 ? CaseKind::NoncompactInner : CaseKind::NoncompactOuterOdd;
        CHECK(run(kind, r).matches({{"Q", "Q"}}));
    }
    for (int r : {6, 8, 10, 12, 14, 16}) {
        CHECK(run(CaseKind::NoncompactEven, r).matches({{"Q", "l1"}}));
    }
}

TEST_CASE("report serialization is deterministic and faithful") {
    EliminationReport rep = run(CaseKind::CompactOddRank, 3, true);
    auto j1 = rep.to_json().dump();
    auto j2 = run(CaseKind::CompactOddRank, 3, true).to_json().dump();
    CHECK(j1 == j2);
    auto j = rep.to_json();
    CHECK(j["case"] == "compact-odd");
    CHECK(j["r"] == 3);
    CHECK(j["parity"] == true);
    CHECK(j["survivors"].size() == 1);
    CHECK(j["candidate_k_count"] == 14);
    // every eliminated pair carries the inequality name and margin
    for (const auto& p : j["pairs"]) {
        if (!p["eliminated_at"].get<std::string>().empty()) {
            CHECK_FALSE(p["inequality"].get<std::string>().empty());
            CHECK(p["margin_log"].get<double>() > 0.0);
        }
    }
    std::string text = rep.to_text();
    CHECK(text.find("survivors: (k0, l0)") != std::string::npos);

    // serialized reports round-trip through the JSON parser
    auto parsed = nlohmann::ordered_json::parse(j.dump());
    CHECK(parsed == j);
}
