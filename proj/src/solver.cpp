#include "invlab/solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "invlab/construct.hpp"

namespace invlab {

std::string_view backend_name(Backend b) {
    switch (b) {
    case Backend::Assign: return "assign";
    case Backend::Order: return "order";
    case Backend::Subset: return "subset";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    if (name == "assign") return Backend::Assign;
    if (name == "order") return Backend::Order;
    if (name == "subset") return Backend::Subset;
    throw UsageError("unknown backend '" + std::string(name) + "' (expected assign|order|subset)");
}

void SearchOptions::validate() const {
    if (max_k < 0 || max_k > kMaxSearchK) {
        throw UsageError("max_k must be in 0..12, got " + std::to_string(max_k));
    }
    if (threads < 0) throw UsageError("threads must be >= 0");
}

namespace {

using Clock = std::chrono::steady_clock;

void certify(const Digraph& d, const InvResult& r) {
    if (!r.resolved()) return;
    if (r.witness.k() != r.value) {
        throw InvariantViolation("witness size " + std::to_string(r.witness.k()) + " differs from value " +
                                 std::to_string(r.value));
    }
    if (!decycles(d, r.witness)) throw InvariantViolation("returned witness does not decycle the digraph");
}

} // namespace

InvResult inv_exact(const Digraph& d, const SearchOptions& opts) {
    opts.validate();
    const auto start = Clock::now();
    InvResult r;
    r.backend = Backend::Assign;
    SearchOptions step = opts;
    for (int k = 0; k <= opts.max_k; ++k) {
        step.budget = opts.budget == kUnlimitedBudget ? kUnlimitedBudget : opts.budget - r.nodes;
        SearchOutcome o;
        try {
            o = exists_family(d, k, step);
        } catch (const BudgetExceeded& e) {
            throw BudgetExceeded(e.what(), k, r.nodes + e.nodes());
        }
        r.nodes += o.nodes;
        if (o.assignment) {
            r.value = k;
            r.witness = assignment_to_family(*o.assignment);
            r.elapsed = Clock::now() - start;
            certify(d, r);
            return r;
        }
    }
    r.status = InvStatus::Unknown;
    r.value = opts.max_k + 1;
    r.witness = InversionFamily{d.n(), {}};
    r.elapsed = Clock::now() - start;
    return r;
}

namespace {

// min over d of min_gram_dim(A + diag(d)) for an order-m matrix given as rows.
int min_free_dim(const std::vector<Word>& rows, int m, Word& best_diag) {
    int best = kMaxWidth + 1;
    best_diag = 0;
    bool zero = std::all_of(rows.begin(), rows.begin() + m, [](Word w) { return w == 0; });
    if (zero) return 0;
    std::vector<Word> work(static_cast<std::size_t>(m));
    const Word count = Word{1} << m;
    for (Word diag = 0; diag < count; ++diag) {
        for (int i = 0; i < m; ++i) work[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)] ^ (((diag >> i) & 1) << i);
        const int r = rank_of_rows(work);
        const int k = diag != 0 ? r : r + 1;
        if (k < best) {
            best = k;
            best_diag = diag;
        }
    }
    return best;
}

} // namespace

InvResult inv_order_backend(const Digraph& d, const SearchOptions& opts) {
    opts.validate();
    const int n = d.n();
    if (!d.is_tournament()) throw UsageError("order backend: input must be a tournament");
    if (n > kOrderBackendMaxN) {
        throw ResourceError("order backend: n = " + std::to_string(n) + " exceeds " + std::to_string(kOrderBackendMaxN));
    }
    const auto start = Clock::now();
    InvResult r;
    r.backend = Backend::Order;

    // bound: only values <= max_k are of interest
    int best = opts.max_k + 1;
    std::vector<int> best_order;
    Word best_diag = 0;

    std::vector<int> prefix;
    std::vector<Word> rows; // flip matrix of the prefix, prefix positions
    Word used = 0;

    auto search = [&](auto&& self) -> void {
        const int m = static_cast<int>(prefix.size());
        if (m == n) {
            Word diag = 0;
            const int k = min_free_dim(rows, m, diag);
            if (k < best) {
                best = k;
                best_order = prefix;
                best_diag = diag;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if ((used >> v) & 1) continue;
            if (++r.nodes > opts.budget) throw BudgetExceeded("order backend: budget exhausted", 0, r.nodes);
            // v goes after every prefix vertex; arcs v -> prefix point backwards.
            Word new_row = 0;
            for (int s = 0; s < m; ++s) {
                if (d.has_arc(v, prefix[static_cast<std::size_t>(s)])) new_row |= Word{1} << s;
            }
            prefix.push_back(v);
            used |= Word{1} << v;
            for (int s = 0; s < m; ++s) rows[static_cast<std::size_t>(s)] |= ((new_row >> s) & 1) << m;
            rows.push_back(new_row);

            Word diag = 0;
            if (min_free_dim(rows, m + 1, diag) < best) self(self);

            rows.pop_back();
            for (int s = 0; s < m; ++s) rows[static_cast<std::size_t>(s)] &= ~(Word{1} << m);
            used &= ~(Word{1} << v);
            prefix.pop_back();
        }
    };
    search(search);

    r.elapsed = Clock::now() - start;
    if (best > opts.max_k) {
        r.status = InvStatus::Unknown;
        r.value = opts.max_k + 1;
        r.witness = InversionFamily{n, {}};
        return r;
    }

    // Realize the winning order's matrix in minimum dimension.
    SymMatrix target = flip_matrix(d, best_order).with_diagonal(0);
    Word diag_by_vertex = 0;
    for (int i = 0; i < n; ++i) {
        if ((best_diag >> i) & 1) diag_by_vertex |= Word{1} << best_order[static_cast<std::size_t>(i)];
    }
    target = target.with_diagonal(diag_by_vertex);
    const std::vector<BitVec> vecs = realize_min(target);
    VectorAssignment a{best, {}};
    for (const auto& v : vecs) {
        if (v.width() != best) throw InvariantViolation("order backend: realization has the wrong width");
        a.vecs.push_back(v.bits());
    }
    r.value = best;
    r.witness = assignment_to_family(a);
    certify(d, r);
    return r;
}

std::optional<int> inv_subset_oracle(const Digraph& d, int max_k, std::uint64_t budget) {
    const int n = d.n();
    if (max_k < 0) throw UsageError("inv_subset_oracle: max_k must be >= 0");
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (int k = 0; k <= max_k; ++k) {
        // (2^n)^k sequences
        if (static_cast<long long>(n) * k >= 63 || (std::uint64_t{1} << (n * k)) > budget) {
            throw ResourceError("inv_subset_oracle: (2^" + std::to_string(n) + ")^" + std::to_string(k) +
                                " sequences exceed the budget");
        }
        std::vector<std::uint64_t> seq(static_cast<std::size_t>(k), 0);
        while (true) {
            InversionFamily f{n, {}};
            for (auto s : seq) f.sets.push_back({s});
            Digraph g = d;
            for (const VertexSet& x : f.sets) g = invert(g, x);
            if (is_acyclic(g)) return k;
            int pos = 0;
            while (pos < k && ++seq[static_cast<std::size_t>(pos)] == subsets) seq[static_cast<std::size_t>(pos++)] = 0;
            if (pos == k) break;
        }
    }
    return std::nullopt;
}

InvResult inv(const Digraph& d, const SearchOptions& opts) {
    switch (opts.backend) {
    case Backend::Assign: return inv_exact(d, opts);
    case Backend::Order: return inv_order_backend(d, opts);
    case Backend::Subset: {
        opts.validate();
        const auto start = Clock::now();
        InvResult r;
        r.backend = Backend::Subset;
        const auto v = inv_subset_oracle(d, opts.max_k);
        r.elapsed = Clock::now() - start;
        if (!v) {
            r.status = InvStatus::Unknown;
            r.value = opts.max_k + 1;
            r.witness = InversionFamily{d.n(), {}};
            return r;
        }
        // The oracle reports a value only; recover a witness of that size.
        r.value = *v;
        SearchOptions exact = opts;
        exact.max_k = *v;
        const auto o = exists_family(d, *v, exact);
        if (!o.assignment) throw InvariantViolation("subset oracle value has no assignment witness");
        r.witness = assignment_to_family(*o.assignment);
        r.nodes = o.nodes;
        certify(d, r);
        return r;
    }
    }
    throw UsageError("unknown backend");
}

TightnessVerdict is_c3_tight(const Digraph& d, const SearchOptions& opts) {
    TightnessVerdict v;
    const InvResult base = inv_exact(d, opts);
    if (!base.resolved()) throw ResourceError("is_c3_tight: inv(D) not resolved within max_k");
    v.inv_d = base.value;

    const InvResult joined = inv_exact(dijoin(c3(), d), opts);
    if (!joined.resolved()) throw ResourceError("is_c3_tight: inv(C3 => D) not resolved within max_k");
    v.inv_joined = joined.value;
    v.tight = v.inv_joined == v.inv_d;

    const int k = v.inv_d;
    if (k >= 3 && k % 2 == 1) {
        SearchOptions even = opts;
        even.even_weight_only = true;
        v.criterion_applied = true;
        v.criterion = exists_family(d, k, even).assignment.has_value();
        if (v.criterion != v.tight) {
            throw InvariantViolation("is_c3_tight: even-weight criterion says " + std::string(v.criterion ? "tight" : "not tight") +
                                     " but direct computation gives inv(C3 => D) = " + std::to_string(v.inv_joined) +
                                     " with inv(D) = " + std::to_string(k));
        }
    } else if (k >= 2 && k % 2 == 0 && v.tight) {
        throw InvariantViolation("is_c3_tight: inv(D) = " + std::to_string(k) +
                                 " is even but inv(C3 => D) equals it");
    }
    return v;
}

RankVerdict rank_lower_bound_check(const Digraph& d, const VectorAssignment& a, int inv_d) {
    if (a.n() != d.n()) throw UsageError("rank_lower_bound_check: assignment does not cover the graph");
    if (!is_acyclic(apply_assignment(d, a))) throw UsageError("rank_lower_bound_check: assignment does not decycle");
    RankVerdict v;
    v.inv = inv_d;
    v.rank = family_rank(a);
    v.required = inv_d % 2 == 0 ? inv_d : inv_d - 1;
    v.ok = v.rank >= v.required;
    return v;
}

RankVerdict rank_lower_bound_check(const Digraph& d, const VectorAssignment& a, const SearchOptions& opts) {
    const InvResult r = inv_exact(d, opts);
    if (!r.resolved()) throw ResourceError("rank_lower_bound_check: inv(D) not resolved within max_k");
    return rank_lower_bound_check(d, a, r.value);
}

std::string format_report(const InvResult& r) {
    std::ostringstream out;
    if (r.resolved()) {
        out << "inv=" << r.value << " k_proof=";
        if (r.value == 0) {
            out << "none";
        } else {
            out << r.value - 1 << "_exhausted";
        }
    } else {
        out << "inv=unknown k_proof=" << r.value - 1 << "_exhausted";
    }
    out << " backend=" << backend_name(r.backend) << " nodes=" << r.nodes << '\n';
    if (r.resolved()) write_family(out, r.witness);
    return out.str();
}

} // namespace invlab
