#include <doctest.h>

#include "invlab/construct.hpp"
#include "invlab/expr.hpp"
#include "invlab/solver.hpp"
#include "support.hpp"

using namespace invlab;
using invlab::testing::random_family;
using invlab::testing::random_oriented;
using invlab::testing::random_tournament;

namespace {

constexpr std::string_view kTight8 = "00111000/10100000/00001110/01101011/01000001/11011000/11001101/11100100";

SearchOptions threads(int t) {
    SearchOptions o;
    o.threads = t;
    return o;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("exists_family examples") {
    const auto tt = exists_family(transitive(5), 0);
    REQUIRE(tt.assignment);
    CHECK(tt.assignment->k == 0);
    CHECK(tt.assignment->vecs == std::vector<Word>(5, 0));

    const auto cyc = exists_family(c3(), 1);
    REQUIRE(cyc.assignment);
    CHECK(assignment_to_family(*cyc.assignment).sets[0].size() == 2);

    CHECK_FALSE(exists_family(dijoin(c3(), c3()), 1).assignment);
    CHECK_FALSE(exists_family(c3(), 0).assignment);
    CHECK(exists_family(Digraph(0), 0).assignment);
}

TEST_CASE("options are validated") {
    SearchOptions o;
    o.max_k = 13;
    CHECK_THROWS_AS(inv_exact(c3(), o), UsageError);
    CHECK_THROWS_AS(exists_family(c3(), 13), UsageError);
    CHECK_THROWS_AS(exists_family(c3(), -1), UsageError);
    o.max_k = 3;
    o.threads = -1;
    CHECK_THROWS_AS(inv_exact(c3(), o), UsageError);
    CHECK(parse_backend("order") == Backend::Order);
    CHECK_THROWS_AS(parse_backend("sat"), UsageError);
}

TEST_CASE("budget exhaustion is an error, not a refutation") {
    SearchOptions o;
    o.budget = 50;
    const Digraph d = build_from_expr("join(c3, c3, c3)");
    CHECK_THROWS_AS(exists_family(d, 2, o), BudgetExceeded);
    CHECK_THROWS_AS(exists_family_serial(d, 2, o), BudgetExceeded);
    try {
        inv_exact(d, o);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.exhausted_below() >= 0);
        CHECK(e.exhausted_below() <= 2);
        CHECK(e.nodes() > 50);
    }
}

TEST_CASE("inv_exact examples") {
    CHECK(inv_exact(build_from_expr("join(c3, c3, c3)")).value == 3);
    CHECK(inv_exact(build_from_expr("blowup(c3; c3, c3, c3)")).value == 4);
    CHECK(inv_exact(build_from_expr("dijoin(c3, dijoin(c3, c3))")).value == 3);
    CHECK(inv_exact(transitive(0)).value == 0);
}

TEST_CASE("inv_exact reports unknown past max_k") {
    SearchOptions o;
    o.max_k = 2;
    const InvResult r = inv_exact(build_from_expr("join(c3, c3, c3)"), o);
    CHECK_FALSE(r.resolved());
    CHECK(r.value == 3);
    CHECK(format_report(r).rfind("inv=unknown k_proof=2_exhausted backend=assign nodes=", 0) == 0);
}

TEST_CASE("witnesses decycle and have the reported size") {
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 200; ++trial) {
        const Digraph d = random_oriented(static_cast<int>(rng() % 9), rng);
        const InvResult r = inv_exact(d);
        REQUIRE(r.resolved());
        CHECK(r.witness.k() == r.value);
        CHECK(decycles(d, r.witness));
        if (r.value > 0) CHECK_FALSE(exists_family(d, r.value - 1).assignment);
    }
}

TEST_CASE("order backend") {
    CHECK(inv_order_backend(transitive(6)).value == 0);
    CHECK(inv_order_backend(c3()).value == 1);
    const InvResult r = inv_order_backend(build_from_expr("join(c3, c3, c3)"));
    CHECK(r.value == 3);
    CHECK(r.backend == Backend::Order);
    CHECK(decycles(build_from_expr("join(c3, c3, c3)"), r.witness));
    Digraph sparse(3);
    sparse.add_arc(0, 1);
    CHECK_THROWS_AS(inv_order_backend(sparse), UsageError);
    CHECK_THROWS_AS(inv_order_backend(transitive(11)), ResourceError);
}

TEST_CASE("subset oracle") {
    CHECK(inv_subset_oracle(c3(), 2) == 1);
    CHECK(inv_subset_oracle(transitive(4), 2) == 0);
    CHECK(inv_subset_oracle(build_from_expr("dijoin(c3, c3)"), 1) == std::nullopt);
    // 12 vertices with inv 2: k = 2 needs 2^24 sequences
    CHECK_THROWS_AS(inv_subset_oracle(build_from_expr("dijoin(c3, dijoin(c3, tt(6)))"), 2), ResourceError);
    CHECK(inv_subset_oracle(transitive(12), 2) == 0);
}

TEST_CASE("three backends agree on all tournaments up to 4 vertices") {
    for (int n = 1; n <= 4; ++n) {
        enumerate_tournaments(n, [](const Digraph& t) {
            const int a = inv_exact(t).value;
            CHECK(inv_order_backend(t).value == a);
            CHECK(inv_subset_oracle(t, 2) == a);
            SearchOptions sub;
            sub.backend = Backend::Subset;
            CHECK(inv(t, sub).value == a);
        });
    }
}

TEST_CASE("order backend agrees on random 6..8 vertex tournaments") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Digraph t = random_tournament(6 + static_cast<int>(rng() % 3), rng);
        CHECK(inv_order_backend(t).value == inv_exact(t).value);
    }
}

TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        const Digraph d = trial % 2 ? random_tournament(4 + static_cast<int>(rng() % 6), rng)
                                    : random_oriented(4 + static_cast<int>(rng() % 6), rng);
        const int v = inv_exact(d).value;
        for (int k = std::max(0, v - 1); k <= v + 1; ++k) {
            for (bool even : {false, true}) {
                SearchOptions o;
                o.even_weight_only = even;
                const auto serial = exists_family_serial(d, k, o);
                for (int t : {1, 2, 3}) {
                    o.threads = t;
                    const auto par = exists_family(d, k, o);
                    CHECK(par.assignment.has_value() == serial.assignment.has_value());
                    if (par.assignment && serial.assignment) CHECK(*par.assignment == *serial.assignment);
                }
            }
        }
    }
}

TEST_CASE("deterministic mode is reproducible across thread counts") {
    const Digraph d = build_from_expr("blowup(c3; c3, 3)");
    const InvResult one = inv_exact(d, threads(1));
    for (int t : {1, 2, 4}) {
        const InvResult r = inv_exact(d, threads(t));
        CHECK(r.value == one.value);
        CHECK(r.witness == one.witness);
        CHECK(r.nodes == one.nodes);
    }
}

TEST_CASE("non-deterministic mode still returns valid witnesses") {
    SearchOptions o = threads(3);
    o.deterministic = false;
    const Digraph d = build_from_expr("join(c3, qn(5), c3)");
    const InvResult r = inv_exact(d, o);
    CHECK(r.value == inv_exact(d).value);
    CHECK(decycles(d, r.witness));
}

TEST_CASE("even-weight restriction") {
    SearchOptions even;
    even.even_weight_only = true;
    const auto a = exists_family(decode_adjacency(kTight8), 3, even);
    REQUIRE(a.assignment);
    CHECK(is_even_weight_assignment(*a.assignment));
    // below k = 3 any two even-weight vectors are orthogonal, so nothing flips
    CHECK_FALSE(exists_family(c3(), 1, even).assignment);
    CHECK_FALSE(exists_family(c3(), 2, even).assignment);
    CHECK(exists_family(c3(), 3, even).assignment);
}

TEST_CASE("search order sorts by imbalance") {
    const auto order = search_vertex_order(transitive(4));
    CHECK(order == std::vector<int>{0, 3, 1, 2});
    CHECK(search_vertex_order(c3()) == std::vector<int>{0, 1, 2});
}

TEST_CASE("is_c3_tight") {
    const TightnessVerdict even = is_c3_tight(build_from_expr("dijoin(c3, c3)"));
    CHECK_FALSE(even.tight);
    CHECK(even.inv_d == 2);
    CHECK(even.inv_joined == 3);
    CHECK_FALSE(even.criterion_applied);

    const TightnessVerdict cyc = is_c3_tight(c3());
    CHECK_FALSE(cyc.tight);
    CHECK(cyc.inv_joined == 2);
    CHECK_FALSE(cyc.criterion_applied);

    const TightnessVerdict zero = is_c3_tight(transitive(3));
    CHECK_FALSE(zero.tight);
    CHECK(zero.inv_joined == 1);

    const TightnessVerdict tight = is_c3_tight(decode_adjacency(kTight8));
    CHECK(tight.tight);
    CHECK(tight.criterion_applied);
    CHECK(tight.criterion);
    CHECK(tight.inv_d == 3);
    CHECK(tight.inv_joined == 3);

    const TightnessVerdict loose = is_c3_tight(build_from_expr("join(c3, c3, c3)"));
    CHECK_FALSE(loose.tight);
    CHECK(loose.criterion_applied);
    CHECK(loose.inv_joined == 4);
}

TEST_CASE("rank lower bound") {
    const Digraph d = build_from_expr("dijoin(c3, c3)");
    const InvResult r = inv_exact(d);
    const VectorAssignment a = family_to_assignment(r.witness);
    const RankVerdict v = rank_lower_bound_check(d, a);
    CHECK(v.inv == 2);
    CHECK(v.required == 2);
    CHECK(v.rank == 2);
    CHECK(v.ok);

    // padding with two duplicate sets keeps the rank
    InversionFamily padded = r.witness;
    padded.sets.push_back(r.witness.sets[0]);
    padded.sets.push_back(r.witness.sets[0]);
    CHECK(rank_lower_bound_check(d, family_to_assignment(padded), 2).ok);

    CHECK_THROWS_AS(rank_lower_bound_check(d, VectorAssignment{0, std::vector<Word>(6, 0)}, 2), UsageError);
}

TEST_CASE("rank bound on random decycling families") {
    std::mt19937_64 rng(33);
    int checked = 0;
    while (checked < 300) {
        const Digraph t = random_tournament(3 + static_cast<int>(rng() % 4), rng);
        const InversionFamily f = random_family(t.n(), 1 + static_cast<int>(rng() % 5), rng);
        if (!decycles(t, f)) continue;
        const int v = inv_exact(t).value;
        CHECK(rank_lower_bound_check(t, family_to_assignment(f), v).ok);
        ++checked;
    }
}

TEST_CASE("report format") {
    CHECK(format_report(inv_exact(c3())) == "inv=1 k_proof=0_exhausted backend=assign nodes=" +
                                                std::to_string(inv_exact(c3()).nodes) + "\n1 2\n");
    const std::string tt = format_report(inv_exact(transitive(3)));
    CHECK(tt.rfind("inv=0 k_proof=none backend=assign nodes=", 0) == 0);
}

} // TEST_SUITE
