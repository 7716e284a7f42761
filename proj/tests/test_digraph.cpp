#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "invlab/construct.hpp"
#include "invlab/digraph.hpp"
#include "support.hpp"

using namespace invlab;
using invlab::testing::random_family;
using invlab::testing::random_oriented;
using invlab::testing::random_tournament;

TEST_SUITE("digraph") {

TEST_CASE("loops and 2-cycles are rejected") {
    CHECK_THROWS_AS(Digraph::from_rows(2, {0b01, 0b00}), UsageError);
    CHECK_THROWS_AS(Digraph::from_rows(2, {0b10, 0b01}), UsageError);
    CHECK_THROWS_AS(Digraph::from_rows(2, {0b100, 0b00}), UsageError);
    Digraph d(3);
    d.add_arc(0, 1);
    CHECK_THROWS_AS(d.add_arc(1, 0), UsageError);
    CHECK_THROWS_AS(d.add_arc(2, 2), UsageError);

    std::istringstream loop("2\n10\n00\n");
    CHECK_THROWS_AS(read_digraph(loop), UsageError);
    std::istringstream two_cycle("2\n01\n10\n");
    CHECK_THROWS_AS(read_digraph(two_cycle), UsageError);
}

TEST_CASE("digraph text round trip") {
    std::ostringstream out;
    write_digraph(out, c3());
    CHECK(out.str() == "3\n010\n001\n100\n");
    std::istringstream in(out.str());
    CHECK(read_digraph(in) == c3());

    std::istringstream short_row("3\n01\n001\n100\n");
    CHECK_THROWS(read_digraph(short_row));
    std::istringstream junk("2\n01\n00\nextra\n");
    CHECK_THROWS(read_digraph(junk));
}

TEST_CASE("family text round trip") {
    const InversionFamily f{4, {VertexSet::of({1, 2}), VertexSet{}, VertexSet::of({0, 3})}};
    std::ostringstream out;
    write_family(out, f);
    CHECK(out.str() == "1 2\n\n0 3\n");
    std::istringstream in(out.str());
    CHECK(read_family(in, 4) == f);

    std::istringstream bad("0 4\n");
    CHECK_THROWS(read_family(bad, 4));
    std::istringstream word("0 x\n");
    CHECK_THROWS(read_family(word, 4));
}

TEST_CASE("adjacency encoding") {
    CHECK(encode_adjacency(c3()) == "010/001/100");
    CHECK(decode_adjacency("010/001/100") == c3());
    CHECK(encode_adjacency(Digraph(0)) == "-");
    CHECK(decode_adjacency("-") == Digraph(0));
    CHECK_THROWS(decode_adjacency("01/11"));
}

TEST_CASE("invert") {
    CHECK(invert(c3(), VertexSet{}) == c3());
    const Digraph all = invert(c3(), VertexSet::all(3));
    CHECK(all == reverse(c3()));
    CHECK_FALSE(is_acyclic(all));
    CHECK(is_acyclic(invert(c3(), VertexSet::of({0, 1}))));
    CHECK(is_acyclic(invert(c3(), VertexSet::of({1, 2}))));
    CHECK(is_acyclic(invert(c3(), VertexSet::of({0, 2}))));
}

TEST_CASE("invert is an involution") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = static_cast<int>(rng() % 12);
        const Digraph d = random_oriented(n, rng);
        const VertexSet x = random_family(n, 1, rng).sets[0];
        CHECK(invert(invert(d, x), x) == d);
        CHECK(invert(d, x).arc_count() == d.arc_count());
    }
}

TEST_CASE("apply_family") {
    const Digraph q = qn(7);
    CHECK(apply_family(q, InversionFamily{7, {}}) == q);
    const InversionFamily f = qn_family(7);
    CHECK(is_acyclic(apply_family(q, f)));
    InversionFamily twice = f;
    twice.sets.insert(twice.sets.end(), f.sets.begin(), f.sets.end());
    CHECK(apply_family(q, twice) == q);
}

TEST_CASE("apply_family is order independent and matches the parity rule") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const Digraph d = random_oriented(n, rng);
        InversionFamily f = random_family(n, static_cast<int>(rng() % 6), rng);
        const Digraph expected = apply_family(d, f);
        CHECK(apply_family_parity(d, f) == expected);
        std::shuffle(f.sets.begin(), f.sets.end(), rng);
        CHECK(apply_family(d, f) == expected);
    }
}

TEST_CASE("topological order") {
    const auto tt4 = topological_order(transitive(4));
    REQUIRE(tt4);
    CHECK(*tt4 == std::vector<int>{0, 1, 2, 3});
    CHECK_FALSE(topological_order(c3()));
    CHECK(is_acyclic(apply_family(qn(5), qn_family(5))));
    const auto cycle = find_cycle(c3());
    REQUIRE(cycle);
    CHECK(*cycle == std::vector<int>{0, 1, 2, 0});
    CHECK_FALSE(find_cycle(transitive(5)));
}

TEST_CASE("find_cycle returns a real cycle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const Digraph d = random_oriented(1 + static_cast<int>(rng() % 10), rng);
        const auto cycle = find_cycle(d);
        CHECK(cycle.has_value() == !is_acyclic(d));
        if (!cycle) continue;
        REQUIRE(cycle->size() >= 4);
        CHECK(cycle->front() == cycle->back());
        for (std::size_t i = 0; i + 1 < cycle->size(); ++i) CHECK(d.has_arc((*cycle)[i], (*cycle)[i + 1]));
    }
}

TEST_CASE("family and assignment views") {
    const auto empty = family_to_assignment(InversionFamily{3, {}});
    CHECK(empty.k == 0);
    CHECK(empty.vecs == std::vector<Word>{0, 0, 0});

    const auto one = family_to_assignment(InversionFamily{3, {VertexSet::of({0, 1})}});
    CHECK(one.k == 1);
    CHECK(one.vecs == std::vector<Word>{1, 1, 0});

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng() % 10);
        const InversionFamily f = random_family(n, static_cast<int>(rng() % 7), rng);
        CHECK(assignment_to_family(family_to_assignment(f)) == f);
    }
}

TEST_CASE("apply_assignment") {
    const VectorAssignment zero{2, {0, 0, 0}};
    CHECK(apply_assignment(c3(), zero) == c3());

    Digraph arc(2);
    arc.add_arc(0, 1);
    const VectorAssignment same{1, {1, 1}};
    CHECK(apply_assignment(arc, same).has_arc(1, 0));
}

TEST_CASE("apply_assignment equals apply_family") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const int k = static_cast<int>(rng() % 5);
        const Digraph d = random_oriented(n, rng);
        const InversionFamily f = random_family(n, k, rng);
        CHECK(apply_assignment(d, family_to_assignment(f)) == apply_family(d, f));
    }
}

TEST_CASE("flip_matrix") {
    std::vector<int> forward{0, 1, 2, 3, 4};
    std::vector<int> backward{4, 3, 2, 1, 0};
    CHECK(flip_matrix(transitive(5), forward).is_zero());
    const SymMatrix all = flip_matrix(transitive(5), backward);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) CHECK(all.at(i, j) == (i != j ? 1 : 0));
    }
    // cyclic rotations leave one arc backward, the other orders two
    std::vector<int> order{0, 1, 2};
    do {
        const SymMatrix m = flip_matrix(c3(), order);
        int ones = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) ones += m.at(i, j);
        }
        const bool rotation = (order[1] - order[0] + 3) % 3 == 1 && (order[2] - order[1] + 3) % 3 == 1;
        CHECK(ones == (rotation ? 1 : 2));
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("flip_matrix is zero exactly for topological orders") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Digraph d = random_oriented(n, rng);
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> pos(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
        bool sorts = true;
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (d.has_arc(u, v) && pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)]) sorts = false;
            }
        }
        CHECK(flip_matrix(d, order).is_zero() == sorts);
    }
}

TEST_CASE("reverse") {
    const auto order = topological_order(reverse(transitive(4)));
    REQUIRE(order);
    CHECK(*order == std::vector<int>{3, 2, 1, 0});
    CHECK(canonical_code(reverse(c3())) == canonical_code(c3()));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Digraph d = random_oriented(static_cast<int>(rng() % 9), rng);
        CHECK(reverse(reverse(d)) == d);
    }
}

TEST_CASE("family_rank and even weight") {
    CHECK(family_rank(VectorAssignment{3, {0, 0, 0}}) == 0);
    CHECK(family_rank(VectorAssignment{3, {0b011, 0b101, 0b110}}) == 2);
    CHECK(is_even_weight_assignment(VectorAssignment{3, {0, 0}}));
    CHECK(is_even_weight_assignment(VectorAssignment{3, {0b011, 0b101}}));
    CHECK_FALSE(is_even_weight_assignment(VectorAssignment{3, {0b011, 0b111}}));
    // u = 0, v = w = 1 on an odd width: v and w are odd
    CHECK_FALSE(is_even_weight_assignment(VectorAssignment{3, {0b000, 0b111, 0b111}}));
}

TEST_CASE("extend_to_tournament") {
    CHECK(extend_to_tournament(c3(), InversionFamily{3, {VertexSet::of({0, 1})}}) == c3());
    CHECK(extend_to_tournament(Digraph(4), InversionFamily{4, {}}) == transitive(4));
    CHECK_THROWS_AS(extend_to_tournament(c3(), InversionFamily{3, {}}), UsageError);

    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 300) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const Digraph d = random_oriented(n, rng);
        const InversionFamily f = random_family(n, static_cast<int>(rng() % 4), rng);
        if (!decycles(d, f)) continue;
        const Digraph ext = extend_to_tournament(d, f);
        CHECK(ext.is_tournament());
        CHECK(decycles(ext, f));
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (d.has_arc(u, v)) CHECK(ext.has_arc(u, v));
            }
        }
        ++checked;
    }
}

TEST_CASE("restricting a decycling family decycles the induced subgraph") {
    std::mt19937_64 rng(10);
    int checked = 0;
    while (checked < 300) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const Digraph d = random_tournament(n, rng);
        const InversionFamily f = random_family(n, static_cast<int>(rng() % 4), rng);
        if (!decycles(d, f)) continue;
        const VertexSet s{rng() & low_mask(n)};
        CHECK(decycles(d.induced(s), f.restricted(s)));
        ++checked;
    }
}

TEST_CASE("tournament enumeration") {
    int count = 0;
    enumerate_tournaments(1, [&](const Digraph&) { ++count; });
    CHECK(count == 1);

    count = 0;
    std::set<std::uint64_t> classes;
    enumerate_tournaments(3, [&](const Digraph& t) {
        ++count;
        CHECK(t.is_tournament());
        classes.insert(canonical_code(t));
    });
    CHECK(count == 8);
    CHECK(classes.size() == 2);

    count = 0;
    std::set<std::uint64_t> codes;
    enumerate_tournaments(5, [&](const Digraph& t) {
        ++count;
        codes.insert(tournament_code(t));
    });
    CHECK(count == 1024);
    CHECK(codes.size() == 1024);

    CHECK_THROWS_AS(enumerate_tournaments(8, [](const Digraph&) {}), ResourceError);
}

TEST_CASE("nonisomorphic tournament counts") {
    // 1, 1, 2, 4, 12, 56 classes for n = 1..6
    const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56};
    for (int n = 1; n <= 6; ++n) CHECK(nonisomorphic_tournaments(n).size() == expected[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("tournament codes round trip") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(rng() % 11);
        const Digraph t = random_tournament(n, rng);
        CHECK(tournament_from_code(n, tournament_code(t)) == t);
    }
}

} // TEST_SUITE
