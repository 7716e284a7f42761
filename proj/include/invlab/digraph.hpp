#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invlab/bitvec.hpp"
#include "invlab/f2linalg.hpp"

namespace invlab {

inline constexpr int kMaxVertices = 64;

struct VertexSet {
    Word mask = 0;

    static VertexSet of(std::initializer_list<int> vertices) {
        VertexSet s;
        for (int v : vertices) s.mask |= Word{1} << v;
        return s;
    }
    static VertexSet all(int n) { return {low_mask(n)}; }

    bool contains(int v) const noexcept { return (mask >> v) & 1; }
    int size() const noexcept { return std::popcount(mask); }
    bool empty() const noexcept { return mask == 0; }

    friend bool operator==(VertexSet, VertexSet) = default;
};

// Oriented graph on at most 64 vertices: no loops, no 2-cycles.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n);

    // Validates loops, 2-cycles and out-of-range bits.
    static Digraph from_rows(int n, std::vector<Word> out_rows);

    int n() const noexcept { return n_; }
    Word out(int v) const noexcept { return out_[static_cast<std::size_t>(v)]; }
    Word in(int v) const noexcept;
    bool has_arc(int u, int v) const noexcept { return (out(u) >> v) & 1; }
    bool adjacent(int u, int v) const noexcept { return has_arc(u, v) || has_arc(v, u); }
    std::span<const Word> out_rows() const noexcept { return out_; }

    void add_arc(int u, int v);
    int arc_count() const noexcept;
    bool is_tournament() const noexcept;

    // Induced subdigraph, vertices renumbered in increasing order.
    Digraph induced(VertexSet s) const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    int n_ = 0;
    std::vector<Word> out_;
};

// An ordered sequence of vertex subsets of a host graph on n vertices.
struct InversionFamily {
    int n = 0;
    std::vector<VertexSet> sets;

    int k() const noexcept { return static_cast<int>(sets.size()); }
    InversionFamily without_empty_sets() const;
    // (X_i ∩ S), renumbered as in Digraph::induced.
    InversionFamily restricted(VertexSet s) const;
    void validate() const;

    friend bool operator==(const InversionFamily&, const InversionFamily&) = default;
};

// One F2^k vector per vertex; bit i of vertex v says v ∈ X_i.
struct VectorAssignment {
    int k = 0;
    std::vector<Word> vecs;

    int n() const noexcept { return static_cast<int>(vecs.size()); }
    BitVec vec(int v) const { return BitVec(k, vecs[static_cast<std::size_t>(v)]); }

    friend bool operator==(const VectorAssignment&, const VectorAssignment&) = default;
};

Digraph invert(const Digraph& d, VertexSet x);

// Inverts the sets one after another.
Digraph apply_family(const Digraph& d, const InversionFamily& f);

// Flips an arc iff both ends lie in an odd number of sets.
Digraph apply_family_parity(const Digraph& d, const InversionFamily& f);

// Kahn's algorithm, smallest available vertex first. nullopt iff a cycle exists.
std::optional<std::vector<int>> topological_order(const Digraph& d);
inline bool is_acyclic(const Digraph& d) { return topological_order(d).has_value(); }

// Some directed cycle v0 -> v1 -> ... -> v0 (first vertex repeated at the end).
std::optional<std::vector<int>> find_cycle(const Digraph& d);

bool decycles(const Digraph& d, const InversionFamily& f);

VectorAssignment family_to_assignment(const InversionFamily& f);
InversionFamily assignment_to_family(const VectorAssignment& a);

// Reverses arc uv iff dot(u, v) = 1.
Digraph apply_assignment(const Digraph& d, const VectorAssignment& a);

// m_uv = 1 iff the arc between u and v points against `order`. Diagonal zero.
SymMatrix flip_matrix(const Digraph& d, std::span<const int> order);

Digraph reverse(const Digraph& d);

// Rank of the set of vertex vectors.
int family_rank(const VectorAssignment& a);

bool is_even_weight_assignment(const VectorAssignment& a);

// Orients every missing pair so that its post-inversion direction agrees with
// the topological order of apply_family(d, f). Requires f to decycle d.
Digraph extend_to_tournament(const Digraph& d, const InversionFamily& f);

// Tournaments are encoded by one bit per pair (i<j), pairs in lexicographic
// order; bit set means i -> j.
inline constexpr int kMaxEnumerationOrder = 7;
int pair_count(int n);
Digraph tournament_from_code(int n, std::uint64_t code);
std::uint64_t tournament_code(const Digraph& t);

// Minimum code over all vertex permutations. n <= 7.
std::uint64_t canonical_code(const Digraph& t);

// Visits all 2^(n(n-1)/2) labeled tournaments in code order.
void enumerate_tournaments(int n, const std::function<void(const Digraph&)>& visit);

// One representative (the canonical form) per isomorphism class, sorted by code.
std::vector<Digraph> nonisomorphic_tournaments(int n);

// Text formats.
Digraph read_digraph(std::istream& in);
void write_digraph(std::ostream& out, const Digraph& d);

// One set per line, space-separated 0-based indices; a blank line is an empty set.
InversionFamily read_family(std::istream& in, int n);
void write_family(std::ostream& out, const InversionFamily& f);

// Single-token adjacency form "011/001/100" used in reports.
std::string encode_adjacency(const Digraph& d);
Digraph decode_adjacency(std::string_view text);

} // namespace invlab
