#include "riddle/service.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

using namespace riddle;
using namespace riddle::service;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class ApiTest : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = riddle::testing::temp_dir("api");
        repo_ = std::make_unique<ProjectRepository>(root_);
        api_ = std::make_unique<Api>(*repo_);
    }
    void TearDown() override { fs::remove_all(root_); }

    ApiResponse call(const std::string& method, const std::string& path, const json& body = nullptr,
                     std::map<std::string, std::string> headers = {}) {
        ApiRequest req;
        req.method = method;
        req.path = path;
        if (!body.is_null()) req.body = body.dump();
        req.headers = std::move(headers);
        return api_->handle(req);
    }

    json ok(const std::string& method, const std::string& path, const json& body = nullptr) {
        const ApiResponse r = call(method, path, body);
        EXPECT_LT(r.status, 300) << method << " " << path << " -> " << r.body;
        return r.body.empty() ? json() : json::parse(r.body);
    }

    static std::string code(const ApiResponse& r) { return json::parse(r.body).at("code").get<std::string>(); }

    std::uint64_t make_project() {
        const json ctx = {{"asset_to_secure", "SCADA"},
                          {"threats_in_scope", "sabotage"},
                          {"loss_estimate", "EUR 2M"},
                          {"prevention_budget", "EUR 150k"}};
        const json p = ok("POST", "/api/projects", {{"name", "Water Plant"}, {"asset_context", ctx}});
        return p["revision"].get<std::uint64_t>();
    }

    std::uint64_t add_scored_tool(std::uint64_t rev, const std::string& name, const std::string& category,
                                  const std::array<int, 7>& scores) {
        json r = ok("POST", "/api/projects/water-plant/tools",
                    {{"revision", rev}, {"name", name}, {"category", category}});
        rev = r["revision"];
        const std::string tid = r["tool"]["id"];
        for (std::size_t i = 0; i < 7; ++i) {
            r = ok("POST", "/api/projects/water-plant/tools/" + tid + "/scores",
                   {{"revision", rev},
                    {"variable", std::string(short_name(kVariables[i]))},
                    {"band", band_index_for_score(scores[i])},
                    {"score", scores[i]},
                    {"motivation", "observed"}});
            rev = r["revision"];
        }
        return rev;
    }

    fs::path root_;
    std::unique_ptr<ProjectRepository> repo_;
    std::unique_ptr<Api> api_;
};

} // namespace

TEST_F(ApiTest, RubricsVerbatimAndStable) {
    const ApiResponse a = call("GET", "/api/rubrics");
    ASSERT_EQ(a.status, 200);
    EXPECT_NE(a.body.find("withstand all the attempts taken"), std::string::npos);
    const json doc = json::parse(a.body);
    for (const json& r : doc["rubrics"]) EXPECT_EQ(r["bands"].size(), 5u);
    EXPECT_TRUE(doc["rubrics"][6]["reversed"].get<bool>());
    EXPECT_EQ(call("GET", "/api/rubrics").body, a.body);
}

TEST_F(ApiTest, Derive) {
    json r = ok("POST", "/api/derive", {{"variable", "Dmg"}, {"raw", {{"unit", "percent"}, {"value", 95}}}});
    EXPECT_EQ(r["band"]["index"], 1);
    EXPECT_EQ(r["band"]["low_score"], 9);
    r = ok("POST", "/api/derive", {{"variable", "C"}, {"raw", 500}});
    EXPECT_EQ(r["band"]["index"], 1);
    EXPECT_EQ(r["default_score"], 9);
    r = ok("POST", "/api/derive", {{"variable", "Dis"}, {"raw", "2h"}, {"mode", "cyber"}});
    EXPECT_EQ(r["band"]["index"], 4);

    ApiResponse bad = call("POST", "/api/derive", {{"variable", "R"}, {"raw", 3}});
    EXPECT_EQ(bad.status, 400);
    EXPECT_EQ(code(bad), "qualitative_variable");
    bad = call("POST", "/api/derive", {{"variable", "Dmg"}, {"raw", {{"unit", "euros"}, {"value", 3}}}});
    EXPECT_EQ(bad.status, 400);
    EXPECT_EQ(code(bad), "unit_mismatch");
}

TEST_F(ApiTest, ClassifyAndWhatIf) {
    json r = ok("POST", "/api/classify", {{"total", 47}});
    EXPECT_EQ(r["threat_level"], "Medium");
    EXPECT_EQ(r["points_to_next_level"], 3);
    EXPECT_EQ(call("POST", "/api/classify", {{"total", 71}}).status, 400);
    r = ok("POST", "/api/whatif", {{"scores", {9, 7, 5, 5, 5, 5, 7}}});
    EXPECT_EQ(r["total"], 43);
    EXPECT_EQ(r["sensitivity"]["min_total"], 43);
    EXPECT_EQ(r["sensitivity"]["max_total"], 50);
    EXPECT_EQ(call("POST", "/api/whatif", {{"scores", {1, 2}}}).status, 400);
}

TEST_F(ApiTest, ProjectLifecycle) {
    EXPECT_EQ(call("GET", "/api/projects/nope").status, 404);
    EXPECT_EQ(code(call("GET", "/api/projects/nope")), "project_not_found");
    const std::uint64_t rev = make_project();
    EXPECT_EQ(call("POST", "/api/projects", {{"name", "Water Plant"}}).status, 409);
    const json list = ok("GET", "/api/projects");
    ASSERT_EQ(list["projects"].size(), 1u);
    EXPECT_EQ(list["projects"][0]["id"], "water-plant");
    EXPECT_TRUE(ok("GET", "/api/projects/water-plant")["scoring_unlocked"].get<bool>());

    const ApiResponse stale = call("DELETE", "/api/projects/water-plant", {{"revision", rev + 5}});
    EXPECT_EQ(stale.status, 409);
    EXPECT_EQ(code(stale), "stale_revision");
    EXPECT_EQ(code(call("DELETE", "/api/projects/water-plant")), "missing_revision");
    EXPECT_EQ(call("DELETE", "/api/projects/water-plant", nullptr, {{"if-match", std::to_string(rev)}}).status, 204);
    EXPECT_EQ(call("GET", "/api/projects/water-plant").status, 404);
}

TEST_F(ApiTest, ScoringUnlocksAfterAnswers) {
    ok("POST", "/api/projects", {{"name", "Bare"}});
    json r = ok("POST", "/api/projects/bare/tools", {{"revision", 0}, {"name", "Zeus"}, {"category", "trojan horse"}});
    EXPECT_EQ(r["tool"]["mode"], "cyber");
    const ApiResponse locked = call("POST", "/api/projects/bare/tools/zeus/scores",
                                    {{"revision", r["revision"]}, {"variable", "Dmg"}, {"band", 3}});
    EXPECT_EQ(locked.status, 400);
    EXPECT_EQ(code(locked), "empty_answer");
    const ApiResponse bad_ctx = call("PUT", "/api/projects/bare",
                                     {{"revision", r["revision"]}, {"asset_context", {{"asset_to_secure", "x"}}}});
    EXPECT_EQ(code(bad_ctx), "empty_answer");
    EXPECT_EQ(json::parse(bad_ctx.body)["field_path"], "threats_in_scope");
}

TEST_F(ApiTest, ScoreErrors) {
    std::uint64_t rev = make_project();
    json r = ok("POST", "/api/projects/water-plant/tools", {{"revision", rev}, {"name", "Worm A"}, {"category", "worm"}});
    rev = r["revision"];
    ApiResponse e = call("POST", "/api/projects/water-plant/tools/worm-a/scores",
                         {{"revision", rev}, {"variable", "L"}, {"band", 2}});
    EXPECT_EQ(e.status, 400);
    EXPECT_EQ(code(e), "qualitative_needs_motivation");
    e = call("POST", "/api/projects/water-plant/tools/worm-a/scores",
             {{"revision", rev}, {"variable", "Dmg"}, {"band", 3}, {"score", 9}});
    EXPECT_EQ(code(e), "score_outside_band");
    e = call("POST", "/api/projects/water-plant/tools/ghost/scores", {{"revision", rev}, {"variable", "Dmg"}, {"band", 3}});
    EXPECT_EQ(e.status, 404);
    EXPECT_EQ(code(e), "unknown_tool");
    e = call("POST", "/api/projects/water-plant/tools", {{"revision", rev}, {"name", "X"}, {"category", "ray gun"}});
    EXPECT_EQ(code(e), "unknown_category");
    e = call("POST", "/api/projects/water-plant/tools", {{"revision", rev}, {"name", "worm a"}, {"category", "worm"}});
    EXPECT_EQ(e.status, 409);
    EXPECT_EQ(code(e), "duplicate_tool");

    ApiRequest raw;
    raw.method = "POST";
    raw.path = "/api/derive";
    raw.body = "{not json";
    EXPECT_EQ(code(api_->handle(raw)), "invalid_json");
    EXPECT_EQ(call("GET", "/api/nothing").status, 404);
}

TEST_F(ApiTest, RawScoreUsesDefault) {
    std::uint64_t rev = make_project();
    json r = ok("POST", "/api/projects/water-plant/tools", {{"revision", rev}, {"name", "Worm A"}, {"category", "worm"}});
    r = ok("POST", "/api/projects/water-plant/tools/worm-a/scores",
           {{"revision", r["revision"]}, {"variable", "C"}, {"raw", {{"unit", "euros"}, {"value", 500}}}});
    const json& c = r["assessment"]["scores"][0];
    EXPECT_EQ(c["variable"], "C");
    EXPECT_EQ(c["band"]["index"], 1);
    EXPECT_EQ(c["score"], 9);
    EXPECT_EQ(c["provenance"], "derived");
}

TEST_F(ApiTest, MatrixSensitivityAndReport) {
    std::uint64_t rev = make_project();
    rev = add_scored_tool(rev, "Worm A", "worm", {9, 8, 6, 4, 2, 7, 10});
    rev = add_scored_tool(rev, "Bomb", "explosive attack", {10, 10, 10, 10, 10, 10, 10});
    ok("POST", "/api/projects/water-plant/tools", {{"revision", rev}, {"name", "Pending"}, {"category", "vandalism"}});

    const json m = ok("GET", "/api/projects/water-plant/matrix");
    ASSERT_EQ(m["rows"].size(), 2u);
    EXPECT_EQ(m["rows"][0]["tool_name"], "Bomb");
    EXPECT_EQ(m["rows"][0]["score_total"], 70);
    EXPECT_EQ(m["rows"][0]["threat_level"], "Severe");
    EXPECT_EQ(m["rows"][1]["score_total"], 46);
    EXPECT_EQ(m["rows"][1]["threat_level"], "Medium");
    EXPECT_EQ(m["rows"][1]["dmg"], 6);
    EXPECT_EQ(m["rows"][1]["dis"], 4);
    ASSERT_EQ(m["excluded"].size(), 1u);
    EXPECT_EQ(m["excluded"][0]["tool_id"], "pending");

    const json s = ok("GET", "/api/projects/water-plant/sensitivity");
    for (const json& rep : s["reports"]) {
        EXPECT_EQ(rep["max_total"].get<int>() - rep["min_total"].get<int>(), 7);
    }
    const ApiResponse csv = call("GET", "/api/projects/water-plant/matrix.csv");
    EXPECT_EQ(csv.body.substr(0, csv.body.find('\n')), "Tool name,R,I,Dmg,Dis,L,E,C,Score,Total");
    const ApiResponse report = call("GET", "/api/projects/water-plant/report");
    EXPECT_NE(report.body.find("| Tool name | R | I | D | D | L | E | C | Score | Total |"), std::string::npos);
    const json v = ok("GET", "/api/projects/water-plant/validate");
    EXPECT_FALSE(v["findings"].empty());

    EXPECT_EQ(ok("GET", "/api/projects/water-plant/tools/worm-a/scores")["assessment"]["score_total"], 46);
}

TEST_F(ApiTest, ConcurrentWritersOneWins) {
    const std::uint64_t rev = make_project();
    std::vector<std::thread> threads;
    std::atomic<int> wins{0}, conflicts{0};
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&, i] {
            ApiRequest req;
            req.method = "POST";
            req.path = "/api/projects/water-plant/tools";
            req.body = json{{"revision", rev}, {"name", "Tool " + std::to_string(i)}, {"category", "worm"}}.dump();
            const ApiResponse r = api_->handle(req);
            if (r.status == 201) ++wins;
            if (r.status == 409) ++conflicts;
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(wins.load(), 1);
    EXPECT_EQ(conflicts.load(), 7);
    EXPECT_EQ(ok("GET", "/api/projects/water-plant/tools")["tools"].size(), 1u);
}

TEST(HttpServer, ServesOverSocket) {
    const fs::path root = riddle::testing::temp_dir("http");
    ProjectRepository repo(root);
    Api api(repo);
    HttpServer server(api, ServerOptions{"127.0.0.1", 0, std::nullopt});
    const int port = server.start();
    ASSERT_GT(port, 0);
    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/api/rubrics");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_NE(res->body.find("withstand all the attempts taken"), std::string::npos);
    res = client.Post("/api/projects", R"({"name":"Socket"})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    res = client.Get("/api/projects/missing");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404);
    res = client.Get("/");
    ASSERT_TRUE(res);
    EXPECT_NE(res->body.find("authentication"), std::string::npos);
    server.stop();
    fs::remove_all(root);
}
