#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "invlab/digraph.hpp"

namespace invlab {

enum class Backend { Assign, Order, Subset };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view name);

inline constexpr int kMaxSearchK = 12;
inline constexpr std::uint64_t kUnlimitedBudget = std::numeric_limits<std::uint64_t>::max();

struct SearchOptions {
    Backend backend = Backend::Assign;
    int max_k = kMaxSearchK;
    std::uint64_t budget = kUnlimitedBudget; // DFS nodes
    bool even_weight_only = false;
    bool deterministic = true;
    int threads = 1; // 0 = OpenMP default

    void validate() const;
};

// The node budget ran out before the search could answer.
class BudgetExceeded : public ResourceError {
public:
    BudgetExceeded(const std::string& what, int exhausted_below, std::uint64_t nodes)
        : ResourceError(what), exhausted_below_(exhausted_below), nodes_(nodes) {}

    // Every k < exhausted_below() was refuted before the budget ran out.
    int exhausted_below() const noexcept { return exhausted_below_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    int exhausted_below_;
    std::uint64_t nodes_;
};

struct SearchOutcome {
    std::optional<VectorAssignment> assignment;
    std::uint64_t nodes = 0;
};

// Is there an assignment of F2^k vectors whose flips make d acyclic?
// Complete DFS in a fixed vertex order with cycle pruning and column-order
// symmetry breaking. Runs the task-parallel kernel with opts.threads workers;
// with opts.deterministic the witness and node count do not depend on the
// thread count.
SearchOutcome exists_family(const Digraph& d, int k, const SearchOptions& opts = {});

// Single-threaded recursive reference for the same search. Same witness as
// exists_family in deterministic mode; node counts may differ.
SearchOutcome exists_family_serial(const Digraph& d, int k, const SearchOptions& opts = {});

// Vertex visiting order used by both kernels.
std::vector<int> search_vertex_order(const Digraph& d);

enum class InvStatus { Resolved, Unknown };

struct InvResult {
    InvStatus status = InvStatus::Resolved;
    // Resolved: inv(d). Unknown: a lower bound (every smaller k was refuted).
    int value = 0;
    InversionFamily witness;
    Backend backend = Backend::Assign;
    std::uint64_t nodes = 0;
    std::chrono::nanoseconds elapsed{0};

    bool resolved() const noexcept { return status == InvStatus::Resolved; }
};

// Iterative deepening over k = 0, 1, ... with exists_family.
InvResult inv_exact(const Digraph& d, const SearchOptions& opts = {});

// min over linear orders of min_gram_dim_free_diag(flip_matrix(d, order)),
// branch and bound on order prefixes. Tournaments with n <= 10 only.
inline constexpr int kOrderBackendMaxN = 10;
InvResult inv_order_backend(const Digraph& d, const SearchOptions& opts = {});

// Brute force over all (2^n)^k subset sequences for k <= max_k. nullopt when
// inv(d) > max_k. Throws ResourceError when (2^n)^k exceeds the budget.
inline constexpr std::uint64_t kSubsetOracleBudget = std::uint64_t{1} << 22;
std::optional<int> inv_subset_oracle(const Digraph& d, int max_k,
                                     std::uint64_t budget = kSubsetOracleBudget);

// Dispatches on opts.backend. The subset backend reports Unknown past max_k.
InvResult inv(const Digraph& d, const SearchOptions& opts = {});

struct TightnessVerdict {
    bool tight = false;   // inv(C3 => d) == inv(d)
    int inv_d = 0;
    int inv_joined = 0;   // inv(C3 => d), computed directly
    bool criterion_applied = false; // k odd >= 3
    bool criterion = false;         // even-weight k-family exists
};

// Both routes are computed; a disagreement throws InvariantViolation.
TightnessVerdict is_c3_tight(const Digraph& d, const SearchOptions& opts = {});

struct RankVerdict {
    int rank = 0;
    int inv = 0;
    int required = 0; // inv if even, inv - 1 if odd
    bool ok = true;
};

RankVerdict rank_lower_bound_check(const Digraph& d, const VectorAssignment& a, int inv_d);
RankVerdict rank_lower_bound_check(const Digraph& d, const VectorAssignment& a,
                                   const SearchOptions& opts = {});

// `inv=<v> k_proof=<v-1>_exhausted backend=<b> nodes=<n>` followed by the
// witness in the family text format.
std::string format_report(const InvResult& r);

} // namespace invlab
