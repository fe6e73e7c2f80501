#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "hochwerk/instance.hpp"

using namespace hochwerk;

namespace {

std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("the bundled t3 instance parses and validates") {
    InstanceFile inst = parse_instance(fixture_path("t3.instance"));
    CHECK(inst.algebras.count("Q") == 1);
    CHECK(inst.algebras.count("T") == 1);  // triangular registers its algebra
    CHECK(inst.triangulars.at("T").dim_t() == 3);
    CHECK(inst.tasks.size() == 4);
}

TEST_CASE("a non-associative table is rejected with the algebraic diagnostic") {
    std::string text = R"({
      "algebras": {
        "bad": {"dim": 2, "unit": ["1","0"],
                "mult": [[["0","1"],["1","0"]], [["0","0"],["0","0"]]]}
      }
    })";
    CHECK_THROWS_AS(parse_instance_text(text, "inline"), NotAssociative);
}

TEST_CASE("dangling names and malformed rationals are parse errors") {
    std::string dangling = R"({
      "algebras": {"Q": {"dim": 1, "unit": ["1"], "mult": [[["1"]]]}},
      "bimodules": {"M": {"left": "Q", "right": "nope", "dim": 1,
                          "left_act": [[["1"]]], "right_act": [[["1"]]]}}
    })";
    CHECK_THROWS_AS(parse_instance_text(dangling, "inline"), ParseError);

    std::string badrat = R"({
      "algebras": {"Q": {"dim": 1, "unit": ["1.5"], "mult": [[["1"]]]}}
    })";
    CHECK_THROWS_AS(parse_instance_text(badrat, "inline"), ParseError);

    CHECK_THROWS_AS(parse_instance_text("not json at all", "inline"), ParseError);
    CHECK_THROWS_AS(parse_instance(fixture_path("missing.instance")), ParseError);
}

TEST_CASE("running the t3 task list gives all-match verdicts") {
    InstanceFile inst = parse_instance(fixture_path("t3.instance"));
    RunResult result = run(inst, inst.tasks, RunOptions{});
    CHECK_FALSE(result.any_mismatch);

    // the two dimension tasks carry the pinned golden values
    bool saw_coh = false, saw_hom = false;
    for (const Record& r : result.records) {
        if (r["op"] == "cohomology") {
            CHECK(r["dims"] == std::vector<Index>{1, 0, 0, 0});
            saw_coh = true;
        }
        if (r["op"] == "homology") {
            CHECK(r["dims"] == std::vector<Index>{2, 0, 0, 0});
            saw_hom = true;
        }
        if (r["op"] == "trace") CHECK(r["dim"] == 2);
    }
    CHECK(saw_coh);
    CHECK(saw_hom);
}

TEST_CASE("records round-trip byte for byte") {
    InstanceFile inst = parse_instance(fixture_path("q2.instance"));
    RunResult result = run(inst, inst.tasks, RunOptions{});

    std::ostringstream stream;
    for (const Record& r : result.records) stream << record_line(r) << "\n";
    std::vector<Record> reparsed = parse_record_lines(stream.str());
    REQUIRE(reparsed.size() == result.records.size());
    for (std::size_t i = 0; i < reparsed.size(); ++i)
        CHECK(record_line(reparsed[i]) == record_line(result.records[i]));

    // determinism: running again yields the identical stream
    RunResult again = run(inst, inst.tasks, RunOptions{});
    std::ostringstream stream2;
    for (const Record& r : again.records) stream2 << record_line(r) << "\n";
    CHECK(stream.str() == stream2.str());
}

TEST_CASE("budget guard") {
    InstanceFile inst = parse_instance(fixture_path("t3.instance"));
    Task big;
    big.op = "cohomology";
    big.algebra = "T";
    big.coeff = "T";
    big.max_degree = 9;  // 3^10 * 3 way past the default cap
    RunResult r;
    CHECK_THROWS_AS(run_task(inst, big, RunOptions{}, r), BudgetExceeded);

    RunOptions tiny;
    tiny.budget = 10;
    Task small;
    small.op = "cohomology";
    small.algebra = "T";
    small.coeff = "T";
    small.max_degree = 1;
    CHECK_THROWS_AS(run_task(inst, small, tiny, r), BudgetExceeded);
    tiny.force = true;
    CHECK_NOTHROW(run_task(inst, small, tiny, r));
}

TEST_CASE("coefficient resolution grammar") {
    InstanceFile inst = parse_instance(fixture_path("t3.instance"));
    AlgebraPtr t = inst.algebras.at("T");

    Bimodule reg = detail::resolve_coeff(inst, t, "T", "test");
    CHECK(reg.dim == 3);
    Bimodule du = detail::resolve_coeff(inst, t, "T*", "test");
    CHECK(du.dim == 3);
    CHECK(du.left_act[0] == reg.right_act[0].transpose());
    Bimodule mid = detail::resolve_coeff(inst, t, "T.m", "test");
    CHECK(mid.dim == 1);

    CHECK_THROWS_AS(detail::resolve_coeff(inst, t, "nope", "test"), ParseError);
    // M is a (Q,Q)-bimodule, not a T-bimodule
    CHECK_THROWS_AS(detail::resolve_coeff(inst, t, "M", "test"), AlgebraMismatch);
}

TEST_CASE("verify on the m2 instance") {
    InstanceFile inst = parse_instance(fixture_path("m2.instance"));
    RunResult result = run(inst, inst.tasks, RunOptions{});
    CHECK_FALSE(result.any_mismatch);
    for (const Record& r : result.records)
        if (r["op"] == "trace") CHECK(r["dim"] == 2);  // tr(M_2) + tr(Q)
}

TEST_CASE("explicit thm3.8 on an unsuitable triangular is a hard error") {
    std::string text = slurp(fixture_path("m2.instance"));
    InstanceFile inst = parse_instance_text(text, "m2");
    // B = Q is fine; force the failure by asking for thm3.8 on a td with dim B = 2
    std::string twisted = text;
    // easier: build a task against a fabricated file where b is 2-dimensional
    std::string bad = R"({
      "algebras": {
        "Q2": {"dim": 2, "unit": ["1","1"],
               "mult": [[["1","0"],["0","0"]],[["0","0"],["0","1"]]]},
        "Q": {"dim": 1, "unit": ["1"], "mult": [[["1"]]]}
      },
      "bimodules": {
        "M": {"left": "Q", "right": "Q2", "dim": 1,
              "left_act": [[["1"]]], "right_act": [[["1"]], [["0"]]]}
      },
      "triangulars": {"T": {"a": "Q", "m": "M", "b": "Q2"}}
    })";
    InstanceFile bi = parse_instance_text(bad, "inline");
    Task t8;
    t8.op = "verify";
    t8.suite = "thm3.8";
    RunResult r;
    CHECK_THROWS_AS(run_task(bi, t8, RunOptions{}, r), ValidationError);

    // under --suite all the same triangular is skipped with a reason
    Task all;
    all.op = "verify";
    all.suite = "all";
    all.max_degree = 2;
    RunResult r2;
    run_task(bi, all, RunOptions{}, r2);
    bool saw_skip = false;
    for (const Record& rec : r2.records)
        if (rec["op"] == "verify" && rec["theorem"] == "thm3.8") {
            CHECK(rec["verdict"] == "skipped");
            saw_skip = true;
        }
    CHECK(saw_skip);
    CHECK_FALSE(r2.any_mismatch);
}
