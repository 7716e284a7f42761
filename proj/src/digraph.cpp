#include "invlab/digraph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "square_text.hpp"

namespace invlab {

namespace {

void check_order(int n) {
    if (n < 0 || n > kMaxVertices) throw UsageError("vertex count out of range: " + std::to_string(n));
}

void check_vertex(int n, int v) {
    if (v < 0 || v >= n) {
        throw UsageError("vertex " + std::to_string(v) + " out of range for n = " + std::to_string(n));
    }
}

// Renumbers the bits of `w` that lie in `keep` to consecutive positions.
Word compress(Word w, Word keep) {
    Word out = 0;
    int pos = 0;
    for (Word m = keep; m != 0; m &= m - 1) {
        int b = std::countr_zero(m);
        if ((w >> b) & 1) out |= Word{1} << pos;
        ++pos;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Digraph

Digraph::Digraph(int n) : n_(n), out_(static_cast<std::size_t>(n), 0) { check_order(n); }

Digraph Digraph::from_rows(int n, std::vector<Word> out_rows) {
    Digraph d(n);
    if (out_rows.size() != static_cast<std::size_t>(n)) {
        throw UsageError("Digraph::from_rows: expected " + std::to_string(n) + " rows");
    }
    for (int u = 0; u < n; ++u) {
        Word row = out_rows[static_cast<std::size_t>(u)];
        if ((row & ~low_mask(n)) != 0) throw UsageError("Digraph: row " + std::to_string(u) + " has bits beyond n");
        if ((row >> u) & 1) throw UsageError("Digraph: loop at vertex " + std::to_string(u));
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (((out_rows[static_cast<std::size_t>(u)] >> v) & 1) && ((out_rows[static_cast<std::size_t>(v)] >> u) & 1)) {
                throw UsageError("Digraph: 2-cycle between " + std::to_string(u) + " and " + std::to_string(v));
            }
        }
    }
    d.out_ = std::move(out_rows);
    return d;
}

Word Digraph::in(int v) const noexcept {
    Word w = 0;
    for (int u = 0; u < n_; ++u) w |= static_cast<Word>((out_[static_cast<std::size_t>(u)] >> v) & 1) << u;
    return w;
}

void Digraph::add_arc(int u, int v) {
    check_vertex(n_, u);
    check_vertex(n_, v);
    if (u == v) throw UsageError("add_arc: loop at vertex " + std::to_string(u));
    if (has_arc(v, u)) {
        throw UsageError("add_arc: " + std::to_string(v) + "->" + std::to_string(u) + " already present");
    }
    out_[static_cast<std::size_t>(u)] |= Word{1} << v;
}

int Digraph::arc_count() const noexcept {
    int c = 0;
    for (Word w : out_) c += std::popcount(w);
    return c;
}

bool Digraph::is_tournament() const noexcept { return arc_count() == n_ * (n_ - 1) / 2; }

Digraph Digraph::induced(VertexSet s) const {
    const Word keep = s.mask & low_mask(n_);
    Digraph d(std::popcount(keep));
    int pos = 0;
    for (Word m = keep; m != 0; m &= m - 1) {
        d.out_[static_cast<std::size_t>(pos++)] = compress(out_[static_cast<std::size_t>(std::countr_zero(m))], keep);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Families and assignments

InversionFamily InversionFamily::without_empty_sets() const {
    InversionFamily f{n, {}};
    for (VertexSet s : sets) {
        if (!s.empty()) f.sets.push_back(s);
    }
    return f;
}

InversionFamily InversionFamily::restricted(VertexSet s) const {
    const Word keep = s.mask & low_mask(n);
    InversionFamily f{std::popcount(keep), {}};
    for (VertexSet x : sets) f.sets.push_back({compress(x.mask, keep)});
    return f;
}

void InversionFamily::validate() const {
    check_order(n);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if ((sets[i].mask & ~low_mask(n)) != 0) {
            throw UsageError("family set " + std::to_string(i) + " contains a vertex >= " + std::to_string(n));
        }
    }
}

Digraph invert(const Digraph& d, VertexSet x) {
    const int n = d.n();
    const Word inside = x.mask & low_mask(n);
    std::vector<Word> rows(d.out_rows().begin(), d.out_rows().end());
    for (Word m = inside; m != 0; m &= m - 1) {
        const int u = std::countr_zero(m);
        rows[static_cast<std::size_t>(u)] = (d.out(u) & ~inside) | (d.in(u) & inside);
    }
    return Digraph::from_rows(n, std::move(rows));
}

Digraph apply_family(const Digraph& d, const InversionFamily& f) {
    if (f.n != d.n()) throw UsageError("apply_family: family is for a different vertex count");
    f.validate();
    Digraph out = d;
    for (VertexSet x : f.sets) out = invert(out, x);
    return out;
}

Digraph apply_family_parity(const Digraph& d, const InversionFamily& f) {
    if (f.n != d.n()) throw UsageError("apply_family_parity: family is for a different vertex count");
    f.validate();
    const int n = d.n();
    Digraph out(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (!d.has_arc(u, v)) continue;
            int count = 0;
            for (VertexSet x : f.sets) count += x.contains(u) && x.contains(v);
            if (count % 2) {
                out.add_arc(v, u);
            } else {
                out.add_arc(u, v);
            }
        }
    }
    return out;
}

std::optional<std::vector<int>> topological_order(const Digraph& d) {
    const int n = d.n();
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (Word m = d.out(u); m != 0; m &= m - 1) ++indegree[static_cast<std::size_t>(std::countr_zero(m))];
    }
    Word ready = 0;
    for (int v = 0; v < n; ++v) {
        if (indegree[static_cast<std::size_t>(v)] == 0) ready |= Word{1} << v;
    }
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    while (ready != 0) {
        const int u = std::countr_zero(ready);
        ready &= ready - 1;
        order.push_back(u);
        for (Word m = d.out(u); m != 0; m &= m - 1) {
            const int v = std::countr_zero(m);
            if (--indegree[static_cast<std::size_t>(v)] == 0) ready |= Word{1} << v;
        }
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
}

std::optional<std::vector<int>> find_cycle(const Digraph& d) {
    const int n = d.n();
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(static_cast<std::size_t>(n), 0);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int root = 0; root < n; ++root) {
        if (state[static_cast<std::size_t>(root)] != 0) continue;
        std::vector<std::pair<int, Word>> stack{{root, d.out(root)}};
        state[static_cast<std::size_t>(root)] = 1;
        while (!stack.empty()) {
            auto& [u, pending] = stack.back();
            if (pending == 0) {
                state[static_cast<std::size_t>(u)] = 2;
                stack.pop_back();
                continue;
            }
            const int v = std::countr_zero(pending);
            pending &= pending - 1;
            if (state[static_cast<std::size_t>(v)] == 1) {
                std::vector<int> cycle{v};
                for (int w = u; w != v; w = parent[static_cast<std::size_t>(w)]) cycle.push_back(w);
                std::reverse(cycle.begin() + 1, cycle.end());
                cycle.push_back(v);
                return cycle;
            }
            if (state[static_cast<std::size_t>(v)] == 0) {
                state[static_cast<std::size_t>(v)] = 1;
                parent[static_cast<std::size_t>(v)] = u;
                stack.emplace_back(v, d.out(v));
            }
        }
    }
    return std::nullopt;
}

bool decycles(const Digraph& d, const InversionFamily& f) { return is_acyclic(apply_family(d, f)); }

VectorAssignment family_to_assignment(const InversionFamily& f) {
    f.validate();
    if (f.k() > kMaxWidth) throw UsageError("family_to_assignment: more than 64 sets");
    VectorAssignment a{f.k(), std::vector<Word>(static_cast<std::size_t>(f.n), 0)};
    for (int i = 0; i < f.k(); ++i) {
        for (Word m = f.sets[static_cast<std::size_t>(i)].mask; m != 0; m &= m - 1) {
            a.vecs[static_cast<std::size_t>(std::countr_zero(m))] |= Word{1} << i;
        }
    }
    return a;
}

InversionFamily assignment_to_family(const VectorAssignment& a) {
    if (a.k < 0 || a.k > kMaxWidth) throw UsageError("assignment width out of range");
    InversionFamily f{a.n(), std::vector<VertexSet>(static_cast<std::size_t>(a.k))};
    for (int v = 0; v < a.n(); ++v) {
        const Word x = a.vecs[static_cast<std::size_t>(v)];
        if ((x & ~low_mask(a.k)) != 0) throw UsageError("assignment vector wider than k");
        for (Word m = x; m != 0; m &= m - 1) f.sets[static_cast<std::size_t>(std::countr_zero(m))].mask |= Word{1} << v;
    }
    return f;
}

Digraph apply_assignment(const Digraph& d, const VectorAssignment& a) {
    if (a.n() != d.n()) throw UsageError("apply_assignment: assignment does not cover the graph");
    const int n = d.n();
    std::vector<Word> rows(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (Word m = d.out(u); m != 0; m &= m - 1) {
            const int v = std::countr_zero(m);
            if (parity(a.vecs[static_cast<std::size_t>(u)] & a.vecs[static_cast<std::size_t>(v)])) {
                rows[static_cast<std::size_t>(v)] |= Word{1} << u;
            } else {
                rows[static_cast<std::size_t>(u)] |= Word{1} << v;
            }
        }
    }
    return Digraph::from_rows(n, std::move(rows));
}

SymMatrix flip_matrix(const Digraph& d, std::span<const int> order) {
    const int n = d.n();
    if (static_cast<int>(order.size()) != n) throw UsageError("flip_matrix: order has wrong length");
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int v = order[static_cast<std::size_t>(i)];
        check_vertex(n, v);
        if (position[static_cast<std::size_t>(v)] != -1) throw UsageError("flip_matrix: order is not a permutation");
        position[static_cast<std::size_t>(v)] = i;
    }
    SymMatrix m(n);
    for (int u = 0; u < n; ++u) {
        for (Word w = d.out(u); w != 0; w &= w - 1) {
            const int v = std::countr_zero(w);
            if (position[static_cast<std::size_t>(u)] > position[static_cast<std::size_t>(v)]) m.set(u, v, 1);
        }
    }
    return m;
}

Digraph reverse(const Digraph& d) {
    std::vector<Word> rows(static_cast<std::size_t>(d.n()));
    for (int v = 0; v < d.n(); ++v) rows[static_cast<std::size_t>(v)] = d.in(v);
    return Digraph::from_rows(d.n(), std::move(rows));
}

int family_rank(const VectorAssignment& a) {
    std::vector<Word> distinct(a.vecs.begin(), a.vecs.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    return rank_of_rows(distinct);
}

bool is_even_weight_assignment(const VectorAssignment& a) {
    return std::all_of(a.vecs.begin(), a.vecs.end(), [](Word x) { return parity(x) == 0; });
}

Digraph extend_to_tournament(const Digraph& d, const InversionFamily& f) {
    const auto order = topological_order(apply_family(d, f));
    if (!order) throw UsageError("extend_to_tournament: family does not decycle the digraph");
    const int n = d.n();
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) position[static_cast<std::size_t>((*order)[static_cast<std::size_t>(i)])] = i;
    const VectorAssignment a = family_to_assignment(f);

    Digraph t = d;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (d.adjacent(u, v)) continue;
            // After inversion the pair must run forward in `order`.
            const bool flipped = parity(a.vecs[static_cast<std::size_t>(u)] & a.vecs[static_cast<std::size_t>(v)]);
            const bool u_first = position[static_cast<std::size_t>(u)] < position[static_cast<std::size_t>(v)];
            if (u_first != flipped) {
                t.add_arc(u, v);
            } else {
                t.add_arc(v, u);
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Tournament enumeration

int pair_count(int n) { return n * (n - 1) / 2; }

Digraph tournament_from_code(int n, std::uint64_t code) {
    if (n < 0 || n > 11) throw ResourceError("tournament_from_code: n too large for a 64-bit code");
    Digraph t(n);
    int bit = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((code >> bit++) & 1) {
                t.add_arc(i, j);
            } else {
                t.add_arc(j, i);
            }
        }
    }
    return t;
}

std::uint64_t tournament_code(const Digraph& t) {
    if (!t.is_tournament()) throw UsageError("tournament_code: not a tournament");
    if (t.n() > 11) throw ResourceError("tournament_code: n too large for a 64-bit code");
    std::uint64_t code = 0;
    int bit = 0;
    for (int i = 0; i < t.n(); ++i) {
        for (int j = i + 1; j < t.n(); ++j) {
            if (t.has_arc(i, j)) code |= std::uint64_t{1} << bit;
            ++bit;
        }
    }
    return code;
}

std::uint64_t canonical_code(const Digraph& t) {
    const int n = t.n();
    if (n > kMaxEnumerationOrder) throw ResourceError("canonical_code: n > 7");
    if (!t.is_tournament()) throw UsageError("canonical_code: not a tournament");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        // New vertex i is old vertex perm[i].
        std::uint64_t code = 0;
        int bit = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (t.has_arc(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)])) code |= std::uint64_t{1} << bit;
                ++bit;
            }
        }
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

void enumerate_tournaments(int n, const std::function<void(const Digraph&)>& visit) {
    if (n < 0) throw UsageError("enumerate_tournaments: negative n");
    if (n > kMaxEnumerationOrder) {
        throw ResourceError("enumerate_tournaments: n = " + std::to_string(n) + " exceeds 7");
    }
    const std::uint64_t count = std::uint64_t{1} << pair_count(n);
    for (std::uint64_t code = 0; code < count; ++code) visit(tournament_from_code(n, code));
}

std::vector<Digraph> nonisomorphic_tournaments(int n) {
    std::set<std::uint64_t> seen;
    enumerate_tournaments(n, [&](const Digraph& t) { seen.insert(canonical_code(t)); });
    std::vector<Digraph> out;
    out.reserve(seen.size());
    for (std::uint64_t c : seen) out.push_back(tournament_from_code(n, c));
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

Digraph read_digraph(std::istream& in) {
    auto sq = detail::read_square_bits(in, "digraph");
    return Digraph::from_rows(sq.n, std::move(sq.rows));
}

void write_digraph(std::ostream& out, const Digraph& d) {
    detail::write_square_bits(out, d.n(), std::vector<Word>(d.out_rows().begin(), d.out_rows().end()));
}

InversionFamily read_family(std::istream& in, int n) {
    check_order(n);
    InversionFamily f{n, {}};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream tokens(line);
        VertexSet s;
        std::string tok;
        while (tokens >> tok) {
            int v = 0;
            try {
                std::size_t used = 0;
                v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw UsageError("family line " + std::to_string(line_no) + ": bad vertex '" + tok + "'");
            }
            if (v < 0 || v >= n) {
                throw UsageError("family line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                                 " out of range for n = " + std::to_string(n));
            }
            s.mask |= Word{1} << v;
        }
        f.sets.push_back(s);
    }
    return f;
}

void write_family(std::ostream& out, const InversionFamily& f) {
    for (VertexSet s : f.sets) {
        bool first = true;
        for (Word m = s.mask; m != 0; m &= m - 1) {
            if (!first) out << ' ';
            out << std::countr_zero(m);
            first = false;
        }
        out << '\n';
    }
}

std::string encode_adjacency(const Digraph& d) {
    std::string s;
    for (int u = 0; u < d.n(); ++u) {
        if (u > 0) s += '/';
        for (int v = 0; v < d.n(); ++v) s += d.has_arc(u, v) ? '1' : '0';
    }
    return s.empty() ? std::string("-") : s;
}

Digraph decode_adjacency(std::string_view text) {
    if (text == "-") return Digraph(0);
    std::string rows_text(text);
    std::replace(rows_text.begin(), rows_text.end(), '/', '\n');
    const int n = static_cast<int>(std::count(text.begin(), text.end(), '/')) + 1;
    std::istringstream in(std::to_string(n) + "\n" + rows_text + "\n");
    return read_digraph(in);
}

} // namespace invlab
