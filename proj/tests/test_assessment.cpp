#include "riddle/assessment.hpp"
#include "riddle/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace riddle;
using riddle::testing::code_of;
using riddle::testing::sample_context;

namespace {

const Timestamp kT0{std::chrono::seconds{1760000000}};

ScoreRequest with_score(Variable v, int score, std::string motivation = "observed in the field") {
    ScoreRequest r;
    r.variable = v;
    r.input = BandChoice{band_index_for_score(score)};
    r.score = score;
    r.motivation = std::move(motivation);
    return r;
}

std::string add(Project& p, const std::string& name, ToolCategory c = ToolCategory::Worm) {
    ToolObservation obs;
    obs.name = name;
    obs.category = c;
    obs.sources = {{"https://example.org/report", "2024-03-01"}};
    return add_tool(p, obs, kT0).id;
}

void score_all(Project& p, const std::string& id, const std::array<int, 7>& scores) {
    for (std::size_t i = 0; i < 7; ++i) record_score(p, id, with_score(kVariables[i], scores[i]), kT0);
}

Project ready_project() {
    Project p = create_project("Plant", kT0);
    set_asset_context(p, sample_context(), kT0);
    return p;
}

} // namespace

TEST(AssetContext, AllAnswersRequired) {
    Project p = create_project("Plant", kT0);
    AssetContext ctx = sample_context();
    ctx.prevention_budget = "   ";
    try {
        set_asset_context(p, ctx, kT0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyAnswer);
        EXPECT_EQ(e.field_path(), "prevention_budget");
    }
    EXPECT_EQ(p.revision, 0u);
    set_asset_context(p, sample_context(), kT0);
    EXPECT_TRUE(p.asset_context.complete());
    EXPECT_EQ(asset_questions()[3].question, "How many resources are you ready to invest for prevention?");
}

TEST(AssetContext, LastWriteWins) {
    Project p = ready_project();
    AssetContext other = sample_context();
    other.asset_to_secure = "Data centre";
    set_asset_context(p, other, kT0);
    EXPECT_EQ(p.asset_context, other);
}

TEST(AssetContext, ScoringNeedsAnswers) {
    Project p = create_project("Plant", kT0);
    const std::string id = add(p, "Worm A");
    EXPECT_EQ(code_of([&] { record_score(p, id, with_score(Variable::Damage, 6), kT0); }), ErrorCode::EmptyAnswer);
}

TEST(Tools, ModeFollowsCategory) {
    Project p = ready_project();
    EXPECT_EQ(find_tool(p, add(p, "Zeus", ToolCategory::TrojanHorse)).mode, DisruptionMode::Cyber);
    EXPECT_EQ(find_tool(p, add(p, "Truck bomb", ToolCategory::ExplosiveAttack)).mode, DisruptionMode::Kinetic);
    EXPECT_EQ(parse_category("trojan horse"), ToolCategory::TrojanHorse);
    EXPECT_EQ(parse_category("Remote-Access_Tool"), ToolCategory::RemoteAccessTool);
    EXPECT_EQ(code_of([] { parse_category("ray gun"); }), ErrorCode::UnknownCategory);
    for (ToolCategory c : kToolCategories) EXPECT_EQ(parse_category(category_name(c)), c);
}

TEST(Tools, DuplicatesRejected) {
    Project p = ready_project();
    const std::string id = add(p, "Stuxnet");
    EXPECT_EQ(id, "stuxnet");
    EXPECT_EQ(code_of([&] { add(p, "stuxnet"); }), ErrorCode::DuplicateTool);
    EXPECT_EQ(code_of([&] { add(p, "  STUXNET "); }), ErrorCode::DuplicateTool);
    EXPECT_EQ(code_of([&] { add(p, "   "); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(p.tools.size(), 1u);
}

TEST(Tools, SourcesValidated) {
    Project p = ready_project();
    ToolObservation obs;
    obs.name = "X";
    obs.sources = {{"ref", "2024-02-30"}};
    EXPECT_TRUE(code_of([&] { add_tool(p, obs, kT0); }).has_value());
    obs.sources = {{"", "2024-02-01"}};
    EXPECT_TRUE(code_of([&] { add_tool(p, obs, kT0); }).has_value());
}

TEST(Tools, RemoveDropsAssessment) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    record_score(p, id, with_score(Variable::Damage, 6), kT0);
    remove_tool(p, id, kT0);
    EXPECT_TRUE(p.assessments.empty());
    EXPECT_EQ(code_of([&] { find_tool(p, id); }), ErrorCode::UnknownTool);
}

TEST(Scoring, QualitativeWithMotivation) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    ScoreRequest r;
    r.variable = Variable::Latency;
    r.input = BandChoice{2};
    r.motivation = "persists in firmware";
    const ToolAssessment& a = record_score(p, id, r, kT0);
    const VariableScore* s = a.find(Variable::Latency);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->band, 2);
    EXPECT_TRUE(s->score == 7 || s->score == 8);
    EXPECT_FALSE(s->derived());
}

TEST(Scoring, QualitativeWithoutMotivation) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    ScoreRequest r;
    r.variable = Variable::Resistance;
    r.input = BandChoice{5};
    r.motivation = "";
    EXPECT_EQ(code_of([&] { record_score(p, id, r, kT0); }), ErrorCode::QualitativeNeedsMotivation);
    r.input = RawMeasurement::seconds(3);
    r.motivation = "x";
    EXPECT_EQ(code_of([&] { record_score(p, id, r, kT0); }), ErrorCode::QualitativeVariable);
}

TEST(Scoring, RawInputDerivesBandAndDefaultScore) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    ScoreRequest r;
    r.variable = Variable::Cost;
    r.input = RawMeasurement::euros(500);
    const VariableScore* s = record_score(p, id, r, kT0).find(Variable::Cost);
    EXPECT_EQ(s->band, 1);
    EXPECT_EQ(s->score, 9);
    EXPECT_TRUE(s->derived());

    r.score = 10;
    EXPECT_EQ(record_score(p, id, r, kT0).find(Variable::Cost)->score, 10);
    r.score = 8;
    EXPECT_EQ(code_of([&] { record_score(p, id, r, kT0); }), ErrorCode::ScoreOutsideBand);

    r.variable = Variable::Damage;
    r.input = RawMeasurement::euros(3);
    r.score.reset();
    EXPECT_EQ(code_of([&] { record_score(p, id, r, kT0); }), ErrorCode::UnitMismatch);
}

TEST(Scoring, BandOutOfRange) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    ScoreRequest r = with_score(Variable::Damage, 6);
    r.input = BandChoice{6};
    r.score.reset();
    EXPECT_EQ(code_of([&] { record_score(p, id, r, kT0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { record_score(p, "nope", with_score(Variable::Damage, 6), kT0); }),
              ErrorCode::UnknownTool);
}

TEST(Scoring, CyberDisruptionRubric) {
    Project p = ready_project();
    const std::string worm = add(p, "Worm A", ToolCategory::Worm);
    const std::string bomb = add(p, "Bomb", ToolCategory::ExplosiveAttack);
    ScoreRequest r;
    r.variable = Variable::DisruptionTiming;
    r.input = RawMeasurement::seconds(2 * 3600);
    EXPECT_EQ(record_score(p, worm, r, kT0).find(Variable::DisruptionTiming)->band, 4);
    EXPECT_EQ(record_score(p, bomb, r, kT0).find(Variable::DisruptionTiming)->band, 5);
}

TEST(Scoring, IdempotentRecord) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    record_score(p, id, with_score(Variable::Damage, 6), kT0);
    const Project before = p;
    record_score(p, id, with_score(Variable::Damage, 6), kT0 + std::chrono::seconds{60});
    EXPECT_EQ(p, before);
}

TEST(Scoring, LastWriteWinsProperty) {
    riddle::testing::Generator gen(21);
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    for (int i = 0; i < 500; ++i) {
        const Variable v = kVariables[static_cast<std::size_t>(gen.uniform(0, 6))];
        const ScoreRequest r = gen.score_request(v);
        record_score(p, id, r, kT0);
        const VariableScore* s = p.assessments.at(id).find(v);
        ASSERT_NE(s, nullptr);
        EXPECT_EQ(s->motivation, r.motivation);
        EXPECT_TRUE(rubric_for(v).band(s->band).contains_score(s->score));
        if (r.score) EXPECT_EQ(s->score, *r.score);
    }
}

TEST(Scoring, ClearScore) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    record_score(p, id, with_score(Variable::Damage, 6), kT0);
    clear_score(p, id, Variable::Damage, kT0);
    EXPECT_TRUE(p.assessments.empty());
    const auto rev = p.revision;
    clear_score(p, id, Variable::Damage, kT0);
    EXPECT_EQ(p.revision, rev);
}

TEST(Total, Examples) {
    Project p = ready_project();
    const std::string a = add(p, "Max");
    score_all(p, a, {10, 10, 10, 10, 10, 10, 10});
    EXPECT_EQ(total_score(p.assessments.at(a)), 70);
    EXPECT_EQ(classify_total(70), ThreatLevel::Severe);

    const std::string b = add(p, "Mixed");
    score_all(p, b, {9, 8, 6, 4, 2, 7, 10});
    EXPECT_EQ(total_score(p.assessments.at(b)), 46);
    EXPECT_EQ(classify_total(46), ThreatLevel::Medium);
}

TEST(Total, IncompleteNamesMissing) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    for (Variable v : kVariables) {
        if (v != Variable::Latency) record_score(p, id, with_score(v, 5), kT0);
    }
    try {
        total_score(p.assessments.at(id));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompleteAssessment);
        EXPECT_NE(std::string(e.what()).find("Latency"), std::string::npos);
    }
}

TEST(Total, SumProperty) {
    riddle::testing::Generator gen(5);
    for (int i = 0; i < 200; ++i) {
        Project p = gen.project(4, true);
        for (const auto& [id, a] : p.assessments) {
            int expected = 0;
            for (const auto& s : a.scores) expected += s->score;
            EXPECT_EQ(total_score(a), expected);
            EXPECT_GE(expected, 7);
            EXPECT_LE(expected, 70);
        }
    }
}

TEST(Matrix, OrderingAndExclusion) {
    Project p = ready_project();
    score_all(p, add(p, "Bravo"), {5, 5, 5, 5, 5, 5, 5});
    score_all(p, add(p, "Alpha"), {5, 5, 5, 5, 5, 5, 5});
    score_all(p, add(p, "Top"), {9, 9, 9, 9, 9, 9, 9});
    const std::string partial = add(p, "Partial");
    record_score(p, partial, with_score(Variable::Damage, 6), kT0);
    add(p, "Unscored");

    const Matrix m = build_matrix(p);
    ASSERT_EQ(m.rows.size(), 3u);
    EXPECT_EQ(m.rows[0].tool_name, "Top");
    EXPECT_EQ(m.rows[0].score_total, 63);
    EXPECT_EQ(m.rows[0].threat_level, ThreatLevel::Severe);
    EXPECT_EQ(m.rows[1].tool_name, "Alpha");
    EXPECT_EQ(m.rows[2].tool_name, "Bravo");
    EXPECT_EQ(m.rows[2].threat_level, ThreatLevel::Medium);
    ASSERT_EQ(m.excluded.size(), 2u);
    EXPECT_EQ(m.excluded[0].tool_name, "Partial");
    EXPECT_EQ(m.excluded[0].missing.size(), 6u);
    EXPECT_EQ(m.excluded[1].missing.size(), 7u);
}

TEST(Matrix, NothingComplete) {
    Project p = ready_project();
    EXPECT_EQ(code_of([&] { build_matrix(p); }), ErrorCode::NoCompleteAssessments);
    add(p, "Unscored");
    EXPECT_EQ(code_of([&] { build_matrix(p); }), ErrorCode::NoCompleteAssessments);
}

TEST(Sensitivity, LowScoresSummingTo43) {
    // Low scores 9,7,5,5,5,5,7 -> bands 1,2,3,3,3,3,2
    const SensitivityReport r = sensitivity_for_bands({1, 2, 3, 3, 3, 3, 2});
    EXPECT_EQ(r.min_total, 43);
    EXPECT_EQ(r.max_total, 50);
    EXPECT_EQ(r.levels_reachable, (std::vector<ThreatLevel>{ThreatLevel::Medium, ThreatLevel::Severe}));
    EXPECT_TRUE(r.boundary_crossed);
}

TEST(Sensitivity, AllBottomBand) {
    const SensitivityReport r = sensitivity_for_bands({5, 5, 5, 5, 5, 5, 5});
    EXPECT_EQ(r.min_total, 7);
    EXPECT_EQ(r.max_total, 14);
    EXPECT_EQ(r.levels_reachable, std::vector<ThreatLevel>{ThreatLevel::Minor});
    EXPECT_FALSE(r.boundary_crossed);
}

TEST(Sensitivity, AnalyticBoundsForEveryBandAssignment) {
    riddle::testing::Generator gen(9);
    for (int i = 0; i < 300; ++i) {
        std::array<int, 7> bands{};
        for (int& b : bands) b = gen.uniform(1, 5);
        const SensitivityReport r = sensitivity_for_bands(bands);
        int lo = 0;
        for (int b : bands) lo += band_low_score(b);
        EXPECT_EQ(r.min_total, lo);
        EXPECT_EQ(r.max_total, lo + 7);
        EXPECT_EQ(r.boundary_crossed, classify_total(lo) != classify_total(lo + 7));
    }
}

TEST(Sensitivity, ProjectLevel) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    score_all(p, id, {9, 8, 6, 4, 2, 7, 10});
    add(p, "Unscored");
    const ProjectSensitivity s = sensitivity_for_project(p);
    ASSERT_EQ(s.reports.size(), 1u);
    EXPECT_EQ(s.reports[0].tool_id, id);
    EXPECT_EQ(s.reports[0].max_total - s.reports[0].min_total, 7);
    EXPECT_EQ(s.excluded.size(), 1u);
}

TEST(Validate, FreshProject) {
    const Project p = create_project("Plant", kT0);
    const auto findings = validate_project(p);
    ASSERT_EQ(findings.size(), 4u);
    for (const Finding& f : findings) {
        EXPECT_EQ(f.severity, Severity::Error);
        EXPECT_EQ(f.code, "unanswered_question");
    }
}

TEST(Validate, MissingSourcesAndCompleteness) {
    Project p = ready_project();
    ToolObservation obs;
    obs.name = "Nameless";
    const std::string id = add_tool(p, obs, kT0).id;
    auto findings = validate_project(p);
    ASSERT_EQ(findings.size(), 2u);
    EXPECT_EQ(findings[0].code, "missing_sources");
    EXPECT_EQ(findings[0].severity, Severity::Warning);
    EXPECT_EQ(findings[1].code, "incomplete_assessment");

    update_tool_details(p, id, "", "", {{"https://example.org", "2024-01-01"}}, kT0);
    score_all(p, id, {9, 8, 6, 4, 2, 7, 10});
    EXPECT_TRUE(validate_project(p).empty());
}

TEST(Invariants, HoldForGeneratedProjects) {
    riddle::testing::Generator gen(77);
    for (int i = 0; i < 100; ++i) {
        const Project p = gen.project(5, false);
        EXPECT_NO_THROW(check_invariants(p));
    }
}

TEST(Invariants, ScoreOutsideBandIsCorrupt) {
    Project p = ready_project();
    const std::string id = add(p, "Worm A");
    record_score(p, id, with_score(Variable::Damage, 6), kT0);
    p.assessments.at(id).scores[index_of(Variable::Damage)]->score = 9;
    try {
        check_invariants(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CorruptDocument);
        EXPECT_NE(e.field_path().find("Dmg"), std::string::npos);
    }
}

TEST(Slug, Shapes) {
    EXPECT_EQ(slugify("Trojan Horse (v2)"), "trojan-horse-v2");
    EXPECT_EQ(slugify("  --Zeus--  "), "zeus");
    EXPECT_EQ(slugify("Café €"), "caf");
}
