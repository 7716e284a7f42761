// Assignment search kernels: the recursive serial reference and the
// OpenMP task kernel. Both walk the same tree in the same order.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>

#include <omp.h>

#include "invlab/solver.hpp"

namespace invlab {

namespace {

// Vertices are renumbered by search position; masks below are over positions.
struct Problem {
    int n = 0;
    int k = 0;
    std::vector<int> order;
    std::vector<Word> out_before; // s < t with arc order[t] -> order[s]
    std::vector<Word> in_before;  // s < t with arc order[s] -> order[t]
    std::vector<Word> domain;     // candidate vectors, ascending
};

Problem make_problem(const Digraph& d, int k, bool even_weight_only) {
    Problem p;
    p.n = d.n();
    p.k = k;
    p.order = search_vertex_order(d);
    p.out_before.assign(static_cast<std::size_t>(p.n), 0);
    p.in_before.assign(static_cast<std::size_t>(p.n), 0);
    for (int t = 0; t < p.n; ++t) {
        const int v = p.order[static_cast<std::size_t>(t)];
        for (int s = 0; s < t; ++s) {
            const int w = p.order[static_cast<std::size_t>(s)];
            if (d.has_arc(v, w)) p.out_before[static_cast<std::size_t>(t)] |= Word{1} << s;
            if (d.has_arc(w, v)) p.in_before[static_cast<std::size_t>(t)] |= Word{1} << s;
        }
    }
    const Word count = Word{1} << k;
    for (Word x = 0; x < count; ++x) {
        if (!even_weight_only || parity(x) == 0) p.domain.push_back(x);
    }
    return p;
}

// Columns are kept in descending lexicographic order (compared over
// positions 0, 1, ...). `boundary` marks coordinates whose column differs from
// the previous one on the positions placed so far.
inline bool respects_column_order(Word x, Word boundary, int k) {
    return (x & ~(x << 1) & ~boundary & low_mask(k)) == 0;
}

inline Word next_boundary(Word x, Word boundary, int k) {
    return boundary | ((x ^ (x << 1)) & low_mask(k));
}

// Places vector x at position t. reach_in[s] holds the positions reachable
// from s in the flipped graph on positions < t. Returns false on a cycle;
// otherwise fills reach_out for positions <= t.
inline bool place(const Problem& p, const Word* vec, int t, Word x, const Word* reach_in, Word* reach_out) {
    const Word ob = p.out_before[static_cast<std::size_t>(t)];
    const Word ib = p.in_before[static_cast<std::size_t>(t)];
    Word flips = 0;
    for (Word m = ob | ib; m != 0; m &= m - 1) {
        const int s = std::countr_zero(m);
        if (parity(x & vec[s])) flips |= Word{1} << s;
    }
    const Word out = (ob & ~flips) | (ib & flips);
    const Word in = (ib & ~flips) | (ob & flips);
    Word reach = out;
    for (Word m = out; m != 0; m &= m - 1) reach |= reach_in[std::countr_zero(m)];
    if (reach & in) return false;
    const Word add = reach | (Word{1} << t);
    for (int s = 0; s < t; ++s) {
        Word r = reach_in[s];
        if (((in >> s) & 1) || (r & in)) r |= add;
        reach_out[s] = r;
    }
    reach_out[t] = reach;
    return true;
}

VectorAssignment to_assignment(const Problem& p, const Word* vec) {
    VectorAssignment a{p.k, std::vector<Word>(static_cast<std::size_t>(p.n), 0)};
    for (int t = 0; t < p.n; ++t) a.vecs[static_cast<std::size_t>(p.order[static_cast<std::size_t>(t)])] = vec[t];
    return a;
}

enum class Stop { None, Found, Capped, Cancelled };

// DFS from a fixed prefix. reach has (n + 1) * n words, one row block per depth.
class Dfs {
public:
    Dfs(const Problem& p, std::uint64_t cap, const std::atomic<long long>* cancel_below, long long self)
        : p_(p), cap_(cap), cancel_below_(cancel_below), self_(self),
          vec_(static_cast<std::size_t>(std::max(p.n, 1)), 0),
          reach_(static_cast<std::size_t>((p.n + 1) * std::max(p.n, 1)), 0) {}

    Stop run_from(const std::vector<Word>& prefix_vec, const std::vector<Word>& prefix_reach, Word boundary) {
        const int depth = static_cast<int>(prefix_vec.size());
        std::copy(prefix_vec.begin(), prefix_vec.end(), vec_.begin());
        std::copy(prefix_reach.begin(), prefix_reach.end(), row(depth));
        return descend(depth, boundary);
    }

    std::uint64_t nodes() const noexcept { return nodes_; }
    const std::vector<Word>& vec() const noexcept { return vec_; }

private:
    Word* row(int depth) { return reach_.data() + static_cast<std::size_t>(depth) * static_cast<std::size_t>(std::max(p_.n, 1)); }

    Stop descend(int t, Word boundary) {
        if (t == p_.n) return Stop::Found;
        for (Word x : p_.domain) {
            if (!respects_column_order(x, boundary, p_.k)) continue;
            if (++nodes_ > cap_) return Stop::Capped;
            if (cancel_below_ && (nodes_ & 1023) == 0 &&
                cancel_below_->load(std::memory_order_relaxed) < self_) {
                return Stop::Cancelled;
            }
            if (!place(p_, vec_.data(), t, x, row(t), row(t + 1))) continue;
            vec_[static_cast<std::size_t>(t)] = x;
            const Stop s = descend(t + 1, next_boundary(x, boundary, p_.k));
            if (s != Stop::None) return s;
        }
        return Stop::None;
    }

    const Problem& p_;
    std::uint64_t cap_;
    const std::atomic<long long>* cancel_below_;
    long long self_;
    std::uint64_t nodes_ = 0;
    std::vector<Word> vec_;
    std::vector<Word> reach_;
};

struct Prefix {
    std::vector<Word> vec;
    std::vector<Word> reach; // depth entries
    Word boundary = 1;
};

// Expands the tree level by level until there are at least `target`
// prefixes or every vertex is placed. Order matches DFS order.
std::vector<Prefix> expand_prefixes(const Problem& p, std::size_t target, std::uint64_t& nodes) {
    std::vector<Prefix> level{Prefix{}};
    std::vector<Word> scratch(static_cast<std::size_t>(std::max(p.n, 1)), 0);
    for (int t = 0; t < p.n && !level.empty() && level.size() < target; ++t) {
        std::vector<Prefix> next;
        for (const Prefix& pre : level) {
            for (Word x : p.domain) {
                if (!respects_column_order(x, pre.boundary, p.k)) continue;
                ++nodes;
                if (!place(p, pre.vec.data(), t, x, pre.reach.data(), scratch.data())) continue;
                Prefix child;
                child.vec = pre.vec;
                child.vec.push_back(x);
                child.reach.assign(scratch.begin(), scratch.begin() + t + 1);
                child.boundary = next_boundary(x, pre.boundary, p.k);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    return level;
}

constexpr std::size_t kPrefixTarget = 256;

void check_search_args(const Digraph& d, int k, const SearchOptions& opts) {
    opts.validate();
    if (k < 0 || k > kMaxSearchK) {
        throw UsageError("exists_family: k must be in 0..12, got " + std::to_string(k));
    }
    if (d.n() > kMaxVertices) throw UsageError("exists_family: too many vertices");
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

[[noreturn]] void throw_budget(int k, std::uint64_t nodes, std::uint64_t budget) {
    throw BudgetExceeded("search budget of " + std::to_string(budget) + " nodes exhausted at k = " +
                             std::to_string(k),
                         k, nodes);
}

} // namespace

std::vector<int> search_vertex_order(const Digraph& d) {
    const int n = d.n();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::vector<int> imbalance(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        order[static_cast<std::size_t>(v)] = v;
        imbalance[static_cast<std::size_t>(v)] = std::abs(std::popcount(d.out(v)) - std::popcount(d.in(v)));
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return imbalance[static_cast<std::size_t>(a)] > imbalance[static_cast<std::size_t>(b)];
    });
    return order;
}

SearchOutcome exists_family_serial(const Digraph& d, int k, const SearchOptions& opts) {
    check_search_args(d, k, opts);
    const Problem p = make_problem(d, k, opts.even_weight_only);
    Dfs dfs(p, opts.budget, nullptr, 0);
    const Stop s = dfs.run_from({}, {}, 1);
    if (s == Stop::Capped) throw_budget(k, dfs.nodes(), opts.budget);
    SearchOutcome out;
    out.nodes = dfs.nodes();
    if (s == Stop::Found) out.assignment = to_assignment(p, dfs.vec().data());
    return out;
}

SearchOutcome exists_family(const Digraph& d, int k, const SearchOptions& opts) {
    check_search_args(d, k, opts);
    const Problem p = make_problem(d, k, opts.even_weight_only);

    std::uint64_t prefix_nodes = 0;
    const std::vector<Prefix> prefixes = expand_prefixes(p, kPrefixTarget, prefix_nodes);
    if (prefix_nodes > opts.budget) throw_budget(k, prefix_nodes, opts.budget);
    const std::uint64_t cap = opts.budget - prefix_nodes;

    struct TaskResult {
        Stop stop = Stop::Cancelled;
        std::uint64_t nodes = 0;
        std::vector<Word> vec;
    };
    const long long count = static_cast<long long>(prefixes.size());
    std::vector<TaskResult> results(prefixes.size());
    // Deterministic: a task is abandoned only once a lower-indexed task found
    // a witness. Otherwise the first witness anywhere stops everyone.
    std::atomic<long long> cancel_below{std::numeric_limits<long long>::max()};
    const bool deterministic = opts.deterministic;
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < count; ++i) {
        auto& res = results[static_cast<std::size_t>(i)];
        if (cancel_below.load(std::memory_order_relaxed) < i) continue;
        const Prefix& pre = prefixes[static_cast<std::size_t>(i)];
        Dfs dfs(p, cap, &cancel_below, i);
        res.stop = dfs.run_from(pre.vec, pre.reach, pre.boundary);
        res.nodes = dfs.nodes();
        if (res.stop == Stop::Found) {
            res.vec = dfs.vec();
            const long long mark = deterministic ? i : -1;
            long long cur = cancel_below.load();
            while (mark < cur && !cancel_below.compare_exchange_weak(cur, mark)) {
            }
        }
    }

    SearchOutcome out;
    std::uint64_t total = prefix_nodes;
    if (deterministic) {
        for (const auto& res : results) {
            if (res.stop == Stop::Cancelled) break; // only after a witness
            total = saturating_add(total, res.nodes);
            if (res.stop == Stop::Capped || total > opts.budget) throw_budget(k, total, opts.budget);
            if (res.stop == Stop::Found) {
                out.assignment = to_assignment(p, res.vec.data());
                break;
            }
        }
    } else {
        const TaskResult* winner = nullptr;
        bool capped = false;
        for (const auto& res : results) {
            total = saturating_add(total, res.nodes);
            if (res.stop == Stop::Found && !winner) winner = &res;
            capped = capped || res.stop == Stop::Capped;
        }
        if (winner) {
            out.assignment = to_assignment(p, winner->vec.data());
        } else if (capped || total > opts.budget) {
            throw_budget(k, total, opts.budget);
        }
    }
    out.nodes = total;
    return out;
}

} // namespace invlab
