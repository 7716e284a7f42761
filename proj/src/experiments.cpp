#include "invlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <omp.h>

#include "invlab/construct.hpp"

namespace invlab {

std::string_view outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Unknown: return "unknown";
    }
    return "?";
}

std::size_t ExperimentReport::count(Outcome o) const {
    return static_cast<std::size_t>(
        std::count_if(instances.begin(), instances.end(), [o](const InstanceResult& r) { return r.outcome == o; }));
}

int ExperimentReport::exit_code() const {
    if (count(Outcome::Fail) > 0) return 3;
    if (count(Outcome::Unknown) > 0) return 2;
    return 0;
}

std::string family_inline(const InversionFamily& f) {
    std::string out;
    for (const VertexSet& s : f.sets) {
        out += '{';
        bool first = true;
        for (int v = 0; v < f.n; ++v) {
            if (!s.contains(v)) continue;
            if (!first) out += ' ';
            out += std::to_string(v);
            first = false;
        }
        out += '}';
    }
    return out.empty() ? "{}" : out;
}

namespace {

// An inv value, or nothing when the budget or max_k ran out.
struct Value {
    std::optional<int> v;
    InversionFamily witness;
    std::string why; // when unknown

    std::string show() const { return v ? std::to_string(*v) : "unknown"; }
};

Value solve(const Digraph& d, const SearchOptions& opts) {
    Value out;
    try {
        const InvResult r = inv(d, opts);
        if (r.resolved()) {
            out.v = r.value;
            out.witness = r.witness;
        } else {
            out.why = "inv>" + std::to_string(r.value - 1);
        }
    } catch (const BudgetExceeded& e) {
        out.why = "budget_exhausted_at_k=" + std::to_string(e.exhausted_below());
    } catch (const ResourceError& e) {
        out.why = "resource_limit";
    }
    return out;
}

std::string adj(const Digraph& d) { return "adj:" + encode_adjacency(d); }

InstanceResult unknown(std::string encoding, const std::string& detail) {
    return InstanceResult{std::move(encoding), Outcome::Unknown, detail, {}};
}

using Task = std::function<std::optional<InstanceResult>()>;

std::vector<InstanceResult> run_tasks(const std::vector<Task>& tasks, int threads) {
    std::vector<std::optional<InstanceResult>> slots(tasks.size());
    const long long count = static_cast<long long>(tasks.size());
    const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)] = tasks[static_cast<std::size_t>(i)]();

    std::vector<InstanceResult> out;
    for (auto& s : slots) {
        if (s) out.push_back(std::move(*s));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const InstanceResult& a, const InstanceResult& b) { return a.encoding < b.encoding; });
    return out;
}

std::vector<Digraph> labeled_tournaments(int n) {
    std::vector<Digraph> out;
    enumerate_tournaments(n, [&](const Digraph& t) { out.push_back(t); });
    return out;
}

int pick_n_max(const ExperimentParams& p, int fallback, int lo, int hi) {
    const int n = p.n_max < 0 ? fallback : p.n_max;
    if (n < lo || n > hi) {
        throw UsageError("--n-max must be in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " +
                         std::to_string(n));
    }
    return n;
}

SearchOptions instance_options(const ExperimentParams& p) {
    SearchOptions o = p.search;
    o.threads = 1;
    o.validate();
    return o;
}

struct Sweep {
    std::vector<Task> tasks;
    std::vector<std::string> summary;
    int n_max = 0;
};

// inv(C3 => D) = inv(D) + 1 for every tournament D with inv(D) = k even, k >= 2.
Sweep sweep_thm13(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 6, 1, 7);
    const SearchOptions o = instance_options(p);
    for (int n = 1; n <= s.n_max; ++n) {
        for (const Digraph& d : labeled_tournaments(n)) {
            s.tasks.push_back([d, o]() -> std::optional<InstanceResult> {
                const std::string enc = adj(d);
                const Value base = solve(d, o);
                if (!base.v) return unknown(enc, "inv_D=unknown " + base.why);
                if (*base.v < 2 || *base.v % 2 != 0) return std::nullopt;
                const Value joined = solve(dijoin(c3(), d), o);
                const std::string detail = "inv_D=" + base.show() + " inv_C3_D=" + joined.show();
                if (!joined.v) return unknown(enc, detail + " " + joined.why);
                if (*joined.v == *base.v + 1) return InstanceResult{enc, Outcome::Pass, detail, {}};
                return InstanceResult{enc, Outcome::Fail, detail + " expected=" + std::to_string(*base.v + 1),
                                      family_inline(joined.witness)};
            });
        }
    }
    s.summary.push_back("hypothesis tournaments with even inv >= 2, n <= " + std::to_string(s.n_max));
    return s;
}

// inv(C3 => D) = inv(D => C3).
Sweep sweep_direction(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 5, 1, 6);
    const SearchOptions o = instance_options(p);
    for (int n = 1; n <= s.n_max; ++n) {
        for (const Digraph& d : labeled_tournaments(n)) {
            s.tasks.push_back([d, o]() -> std::optional<InstanceResult> {
                const std::string enc = adj(d);
                const Value left = solve(dijoin(c3(), d), o);
                const Value right = solve(dijoin(d, c3()), o);
                const std::string detail = "inv_C3_D=" + left.show() + " inv_D_C3=" + right.show();
                if (!left.v || !right.v) return unknown(enc, detail);
                if (*left.v == *right.v) return InstanceResult{enc, Outcome::Pass, detail, {}};
                const bool left_smaller = *left.v < *right.v;
                return InstanceResult{enc, Outcome::Fail, detail,
                                      (left_smaller ? "C3=>D:" : "D=>C3:") +
                                          family_inline(left_smaller ? left.witness : right.witness)};
            });
        }
    }
    return s;
}

// inv([C3, C3, D]) = inv(C3 => D) + 1.
Sweep sweep_abnormal(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 3, 1, 4);
    const SearchOptions o = instance_options(p);
    for (int n = 1; n <= s.n_max; ++n) {
        for (const Digraph& d : labeled_tournaments(n)) {
            s.tasks.push_back([d, o]() -> std::optional<InstanceResult> {
                const std::string enc = adj(d);
                const Value joined = solve(dijoin(c3(), d), o);
                const std::vector<Digraph> parts{c3(), c3(), d};
                const Value triple = solve(k_join(parts), o);
                const std::string detail = "inv_C3_D=" + joined.show() + " inv_C3_C3_D=" + triple.show();
                if (!joined.v || !triple.v) return unknown(enc, detail);
                if (*triple.v == *joined.v + 1) return InstanceResult{enc, Outcome::Pass, detail, {}};
                return InstanceResult{enc, Outcome::Fail, detail + " expected=" + std::to_string(*joined.v + 1),
                                      family_inline(triple.witness)};
            });
        }
    }
    return s;
}

// [D_1, ..., D_k] with every part C3 except D_j: sum of inv, minus one when
// D_j is tight (inv(C3 => D_j) = inv(D_j)).
Sweep sweep_kjoin(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 4, 1, 5);
    const SearchOptions o = instance_options(p);
    for (int n = 1; n <= s.n_max; ++n) {
        for (const Digraph& d : labeled_tournaments(n)) {
            for (int k = 2; k <= 3; ++k) {
                for (int j = 0; j < k; ++j) {
                    s.tasks.push_back([d, k, j, o]() -> std::optional<InstanceResult> {
                        std::vector<Digraph> parts(static_cast<std::size_t>(k), c3());
                        parts[static_cast<std::size_t>(j)] = d;
                        std::string enc = "k=" + std::to_string(k) + ",j=" + std::to_string(j) + "," + adj(d);
                        const Value vd = solve(d, o);
                        if (!vd.v) return unknown(enc, "inv_Dj=unknown");
                        if (*vd.v < 1) return std::nullopt;
                        const Value vc = solve(dijoin(c3(), d), o);
                        const Value vj = solve(k_join(parts), o);
                        std::string detail = "inv_Dj=" + vd.show() + " inv_C3_Dj=" + vc.show() + " inv_join=" + vj.show();
                        if (!vc.v || !vj.v) return unknown(enc, detail);
                        const int sum = *vd.v + (k - 1);
                        const int expected = *vc.v == *vd.v ? sum - 1 : sum;
                        detail += " expected=" + std::to_string(expected);
                        if (*vj.v == expected) return InstanceResult{enc, Outcome::Pass, detail, {}};
                        return InstanceResult{enc, Outcome::Fail, detail, family_inline(vj.witness)};
                    });
                }
            }
        }
    }
    s.summary.push_back("parts C3 except position j, k in {2,3}, D_j tournaments with inv >= 1, n <= " +
                        std::to_string(s.n_max));
    return s;
}

// inv(T[C3]_n) = n + 1 for every n-vertex tournament T with inv(T) = 1.
Sweep sweep_thm15(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 3, 1, 4);
    const SearchOptions o = instance_options(p);
    for (int n = 1; n <= s.n_max; ++n) {
        for (const Digraph& t : labeled_tournaments(n)) {
            s.tasks.push_back([t, n, o]() -> std::optional<InstanceResult> {
                const std::string enc = adj(t);
                const Value vt = solve(t, o);
                if (!vt.v) return unknown(enc, "inv_T=unknown");
                if (*vt.v != 1) return std::nullopt;
                const std::vector<Digraph> parts(static_cast<std::size_t>(n), c3());
                const Value vb = solve(blow_up(t, parts), o);
                const std::string detail = "n=" + std::to_string(n) + " inv_blowup=" + vb.show();
                if (!vb.v) return unknown(enc, detail + " " + vb.why);
                if (*vb.v == n + 1) return InstanceResult{enc, Outcome::Pass, detail, {}};
                return InstanceResult{enc, Outcome::Fail, detail + " expected=" + std::to_string(n + 1),
                                      family_inline(vb.witness)};
            });
        }
    }
    return s;
}

constexpr int kQnFamilyMax = 15;

// Explicit family check up to 15, exact values up to n-max.
Sweep sweep_qn(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 7, 1, 12);
    const SearchOptions o = instance_options(p);
    auto pad = [](int n) { return (n < 10 ? "0" : "") + std::to_string(n); };
    for (int n = 1; n <= std::max(kQnFamilyMax, s.n_max); ++n) {
        const bool exact = n <= s.n_max;
        s.tasks.push_back([n, exact, o, pad]() -> std::optional<InstanceResult> {
            const std::string enc = "expr:qn(" + std::to_string(n) + ")";
            const Digraph q = qn(n);
            const InversionFamily f = qn_family(n);
            const int bound = (n - 1) / 2;
            std::string detail = "n=" + pad(n) + " bound=" + std::to_string(bound) + " family_size=" +
                                 std::to_string(f.k());
            const bool family_ok = f.k() == bound && decycles(q, f);
            detail += family_ok ? " family=decycles" : " family=FAILS";
            if (!family_ok) return InstanceResult{enc, Outcome::Fail, detail, family_inline(f)};
            if (!exact) return InstanceResult{enc, Outcome::Pass, detail, {}};
            const Value v = solve(q, o);
            detail += " inv=" + v.show();
            if (!v.v) return unknown(enc, detail);
            if (*v.v <= bound) return InstanceResult{enc, Outcome::Pass, detail, {}};
            return InstanceResult{enc, Outcome::Fail, detail, family_inline(v.witness)};
        });
    }
    return s;
}

// inv(n) = max inv over n-vertex tournaments, against (n-1)/2 - log2 n <= inv(n) <= n-3 for n >= 4.
Sweep sweep_bounds(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 5, 1, 6);
    const SearchOptions o = instance_options(p);
    for (int n = 1; n <= s.n_max; ++n) {
        s.tasks.push_back([n, o]() -> std::optional<InstanceResult> {
            int best = -1;
            Digraph arg;
            bool incomplete = false;
            for (const Digraph& t : labeled_tournaments(n)) {
                const Value v = solve(t, o);
                if (!v.v) {
                    incomplete = true;
                    continue;
                }
                if (*v.v > best) {
                    best = *v.v;
                    arg = t;
                }
            }
            const std::string enc = "n=" + std::to_string(n) + ":" + adj(arg);
            std::string detail = "inv_n=" + std::to_string(best);
            if (incomplete) return unknown(enc, detail + " (some instances unresolved, value is a lower bound)");
            if (n < 4) return InstanceResult{enc, Outcome::Pass, detail + " bounds=n/a", {}};
            const double lower = (n - 1) / 2.0 - std::log2(static_cast<double>(n));
            const int upper = n - 3;
            std::ostringstream b;
            b.precision(3);
            b << std::fixed << " lower=" << lower << " upper=" << upper;
            detail += b.str();
            const bool ok = best >= lower && best <= upper;
            return InstanceResult{enc, ok ? Outcome::Pass : Outcome::Fail, detail, {}};
        });
    }
    s.summary.push_back("lower bound uses log base 2");
    return s;
}

// inv(L => R) = inv(R => L) over tournament pairs with |L| + |R| <= n-max.
Sweep sweep_conj_direction(const ExperimentParams& p) {
    Sweep s;
    s.n_max = pick_n_max(p, 6, 2, 8);
    const SearchOptions o = instance_options(p);
    for (int a = 1; a < s.n_max; ++a) {
        const auto ls = labeled_tournaments(a);
        for (int b = 1; a + b <= s.n_max; ++b) {
            const auto rs = labeled_tournaments(b);
            for (const Digraph& l : ls) {
                for (const Digraph& r : rs) {
                    s.tasks.push_back([l, r, o]() -> std::optional<InstanceResult> {
                        const std::string enc = "L=" + adj(l) + ",R=" + adj(r);
                        const Value lr = solve(dijoin(l, r), o);
                        const Value rl = solve(dijoin(r, l), o);
                        const std::string detail = "inv_L_R=" + lr.show() + " inv_R_L=" + rl.show();
                        if (!lr.v || !rl.v) return unknown(enc, detail);
                        if (*lr.v == *rl.v) return InstanceResult{enc, Outcome::Pass, detail, {}};
                        const bool lr_smaller = *lr.v < *rl.v;
                        return InstanceResult{enc, Outcome::Fail, detail,
                                              (lr_smaller ? "L=>R:" : "R=>L:") +
                                                  family_inline(lr_smaller ? lr.witness : rl.witness)};
                    });
                }
            }
        }
    }
    s.summary.push_back("pairs of tournaments, |L| + |R| <= " + std::to_string(s.n_max));
    return s;
}

const std::map<std::string, Sweep (*)(const ExperimentParams&), std::less<>>& registry() {
    static const std::map<std::string, Sweep (*)(const ExperimentParams&), std::less<>> r{
        {"thm13", sweep_thm13},   {"direction", sweep_direction}, {"abnormal", sweep_abnormal},
        {"kjoin", sweep_kjoin},   {"thm15", sweep_thm15},         {"qn", sweep_qn},
        {"bounds", sweep_bounds}, {"conj-direction", sweep_conj_direction},
    };
    return r;
}

std::string budget_text(std::uint64_t b) { return b == kUnlimitedBudget ? "unlimited" : std::to_string(b); }

} // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"thm13", "direction", "abnormal", "kjoin",
                                                "thm15", "qn",        "bounds",   "conj-direction"};
    return names;
}

ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw UsageError("unknown experiment '" + std::string(name) + "'");
    if (params.threads < 0) throw UsageError("threads must be >= 0");
    const auto start = std::chrono::steady_clock::now();

    Sweep sweep = it->second(params);
    ExperimentReport r;
    r.name = std::string(name);
    r.instances = run_tasks(sweep.tasks, params.threads);
    r.summary = std::move(sweep.summary);
    std::ostringstream ps;
    ps << "n_max=" << sweep.n_max << " backend=" << backend_name(params.search.backend)
       << " max_k=" << params.search.max_k << " budget=" << budget_text(params.search.budget)
       << " even_weight_only=" << (params.search.even_weight_only ? 1 : 0);
    r.params = ps.str();
    r.runtime = std::chrono::steady_clock::now() - start;
    return r;
}

std::string render_report(const ExperimentReport& r, bool with_runtime) {
    std::ostringstream out;
    out << "experiment " << r.name << ' ' << r.params << '\n';
    for (const auto& i : r.instances) {
        out << "instance " << i.encoding << ' ' << outcome_name(i.outcome) << ' ' << i.detail << '\n';
    }
    for (const auto& i : r.instances) {
        if (i.outcome == Outcome::Fail) {
            out << "finding " << i.encoding << ' ' << i.detail << " witness=" << i.witness << '\n';
        }
    }
    for (const auto& line : r.summary) out << "note " << line << '\n';
    out << "totals instances=" << r.instances.size() << " pass=" << r.count(Outcome::Pass)
        << " fail=" << r.count(Outcome::Fail) << " unknown=" << r.count(Outcome::Unknown) << '\n';
    if (with_runtime) {
        out << "runtime_ms=" << std::chrono::duration_cast<std::chrono::milliseconds>(r.runtime).count() << '\n';
    }
    return out.str();
}

} // namespace invlab
