#include <doctest.h>

#include "invlab/experiments.hpp"

using namespace invlab;

namespace {

ExperimentReport run(std::string_view name, int n_max, int threads = 1) {
    ExperimentParams p;
    p.n_max = n_max;
    p.threads = threads;
    return run_experiment(name, p);
}

bool sorted(const ExperimentReport& r) {
    for (std::size_t i = 1; i < r.instances.size(); ++i) {
        if (r.instances[i - 1].encoding > r.instances[i].encoding) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("every named experiment runs at a small size") {
    for (const std::string& name : experiment_names()) {
        CAPTURE(name);
        // thm13 needs a tournament with inv 2, the smallest has 5 vertices
        const int n = name == "conj-direction" ? 4 : name == "thm13" ? 5 : 3;
        const ExperimentReport r = run(name, n);
        CHECK(r.exit_code() == 0);
        CHECK_FALSE(r.instances.empty());
        CHECK(sorted(r));
        CHECK(r.count(Outcome::Pass) == r.instances.size());
    }
}

TEST_CASE("thm13 at n <= 5") {
    const ExperimentReport r = run("thm13", 5);
    CHECK(r.exit_code() == 0);
    CHECK(r.instances.size() > 0);
    for (const auto& i : r.instances) CHECK(i.detail == "inv_D=2 inv_C3_D=3");
}

TEST_CASE("qn table") {
    const ExperimentReport r = run("qn", 6);
    REQUIRE(r.instances.size() == 15);
    CHECK(r.instances[0].encoding == "expr:qn(1)");
    const std::string text = render_report(r, false);
    CHECK(text.find("instance expr:qn(6) pass n=06 bound=2 family_size=2 family=decycles inv=2") != std::string::npos);
    CHECK(text.find("instance expr:qn(15) pass n=15 bound=7 family_size=7 family=decycles\n") != std::string::npos);
}

TEST_CASE("bounds table") {
    const ExperimentReport r = run("bounds", 5);
    REQUIRE(r.instances.size() == 5);
    CHECK(r.instances[3].detail.rfind("inv_n=1 ", 0) == 0);
    CHECK(r.instances[4].detail.rfind("inv_n=2 ", 0) == 0);
}

TEST_CASE("unknown instances come from a tight budget") {
    ExperimentParams p;
    p.n_max = 3;
    p.search.budget = 5;
    const ExperimentReport r = run_experiment("abnormal", p);
    CHECK(r.count(Outcome::Unknown) > 0);
    CHECK(r.count(Outcome::Fail) == 0);
    CHECK(r.exit_code() == 2);
}

TEST_CASE("reports are identical across thread counts") {
    const std::string one = render_report(run("direction", 4, 1), false);
    CHECK(render_report(run("direction", 4, 3), false) == one);
    CHECK(render_report(run("direction", 4, 1), false) == one);
}

TEST_CASE("render format") {
    ExperimentReport r;
    r.name = "demo";
    r.params = "n_max=1";
    r.instances.push_back({"adj:0", Outcome::Pass, "x=1", {}});
    r.instances.push_back({"adj:1", Outcome::Fail, "x=2", "{0 1}"});
    r.summary.push_back("hello");
    CHECK(render_report(r, false) ==
          "experiment demo n_max=1\n"
          "instance adj:0 pass x=1\n"
          "instance adj:1 fail x=2\n"
          "finding adj:1 x=2 witness={0 1}\n"
          "note hello\n"
          "totals instances=2 pass=1 fail=1 unknown=0\n");
    CHECK(r.exit_code() == 3);
}

TEST_CASE("bad parameters") {
    CHECK_THROWS_AS(run("nope", 3), UsageError);
    CHECK_THROWS_AS(run("thm13", 9), UsageError);
    CHECK_THROWS_AS(run("qn", 0), UsageError);
}

} // TEST_SUITE
