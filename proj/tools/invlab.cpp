// invlab: inversion numbers of oriented graphs from the command line.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "invlab/experiments.hpp"
#include "invlab/expr.hpp"
#include "invlab/f2linalg.hpp"
#include "invlab/solver.hpp"

namespace {

using namespace invlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitViolation = 3;

// Input problem already reported on stderr.
struct Reported {};

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        throw Reported{};
    }
    return in;
}

// `expr:<expression>`, `adj:<rows>` or a digraph file.
Digraph load_graph(const std::string& source) {
    if (source.rfind("expr:", 0) == 0) {
        const std::string text = source.substr(5);
        try {
            return build_from_expr(text);
        } catch (const ParseError& e) {
            std::cerr << "error: " << e.what() << "\n  " << text << "\n  " << std::string(e.offset(), ' ') << "^\n";
            throw Reported{};
        }
    }
    if (source.rfind("adj:", 0) == 0) return decode_adjacency(source.substr(4));
    auto in = open_file(source);
    return read_digraph(in);
}

struct SearchFlags {
    std::string backend = "assign";
    int max_k = kMaxSearchK;
    std::uint64_t budget = kUnlimitedBudget;
    bool deterministic = false;
    bool even_weight_only = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--backend", backend, "assign|order|subset")->check(CLI::IsMember({"assign", "order", "subset"}));
        cmd->add_option("--max-k", max_k, "largest family size to try")->check(CLI::Range(0, kMaxSearchK));
        cmd->add_option("--budget", budget, "search node budget");
        cmd->add_flag("--deterministic", deterministic, "reproducible witnesses and reports");
        cmd->add_flag("--even-weight-only", even_weight_only, "only even-weight characteristic vectors");
    }

    SearchOptions options() const {
        SearchOptions o;
        o.backend = parse_backend(backend);
        o.max_k = max_k;
        o.budget = budget;
        o.deterministic = deterministic;
        o.even_weight_only = even_weight_only;
        o.threads = 0;
        return o;
    }
};

int cmd_inv(const std::string& source, const SearchFlags& flags) {
    const Digraph d = load_graph(source);
    try {
        const InvResult r = inv(d, flags.options());
        std::cout << format_report(r);
        return r.resolved() ? kExitOk : kExitUnknown;
    } catch (const BudgetExceeded& e) {
        const int last = e.exhausted_below() - 1;
        std::cout << "inv=unknown k_proof=" << (last < 0 ? std::string("none") : std::to_string(last) + "_exhausted")
                  << " backend=" << flags.backend << " nodes=" << e.nodes() << '\n';
        std::cerr << e.what() << '\n';
        return kExitUnknown;
    } catch (const ResourceError& e) {
        std::cout << "inv=unknown backend=" << flags.backend << '\n';
        std::cerr << e.what() << '\n';
        return kExitUnknown;
    }
}

int cmd_verify(const std::string& source, const std::string& family_path) {
    const Digraph d = load_graph(source);
    auto in = open_file(family_path);
    const InversionFamily f = read_family(in, d.n());
    const Digraph result = apply_family(d, f);
    std::cout << "family_size=" << f.k() << '\n';
    if (const auto order = topological_order(result)) {
        std::cout << "acyclic order=";
        for (std::size_t i = 0; i < order->size(); ++i) std::cout << (i ? " " : "") << (*order)[i];
        std::cout << '\n';
        return kExitOk;
    }
    const auto cycle = find_cycle(result);
    std::cout << "cycle ";
    for (std::size_t i = 0; i < cycle->size(); ++i) std::cout << (i ? "->" : "") << (*cycle)[i];
    std::cout << '\n';
    return kExitViolation;
}

int cmd_gram(const std::string& path) {
    auto in = open_file(path);
    const SymMatrix m = read_matrix(in);
    const int n = m.n();
    if (const auto g = gram_factor(m)) {
        std::cout << "factored k=" << g->k << '\n';
        for (int i = 0; i < g->k; ++i) {
            for (int j = 0; j < n; ++j) std::cout << (g->columns[static_cast<std::size_t>(j)].get(i) ? '1' : '0');
            std::cout << '\n';
        }
    } else {
        std::cout << "infeasible at k=" << n << " (even order, zero diagonal, nonsingular)\n";
    }
    std::cout << "rank=" << rank(m) << " min_gram_dim=" << min_gram_dim(m) << '\n';
    return kExitOk;
}

int cmd_experiment(const std::string& name, int n_max, const SearchFlags& flags) {
    ExperimentParams p;
    p.n_max = n_max;
    p.search = flags.options();
    p.search.deterministic = true; // per-instance witnesses are part of the report
    const ExperimentReport r = run_experiment(name, p);
    std::cout << render_report(r, !flags.deterministic);
    return r.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invlab: exact inversion numbers of oriented graphs"};
    app.require_subcommand(1);

    std::string source;
    std::string family_path;
    std::string matrix_path;
    std::string experiment;
    int n_max = -1;
    SearchFlags inv_flags;
    SearchFlags exp_flags;

    auto* inv_cmd = app.add_subcommand("inv", "compute inv(D) with a proof of minimality");
    inv_cmd->add_option("graph", source, "digraph file, expr:<expression> or adj:<rows>")->required();
    inv_flags.attach(inv_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "apply a family and report the result");
    verify_cmd->add_option("graph", source, "digraph file, expr:<expression> or adj:<rows>")->required();
    verify_cmd->add_option("family", family_path, "family file")->required();

    auto* gram_cmd = app.add_subcommand("gram", "factor a symmetric F2 matrix as U^T U");
    gram_cmd->add_option("matrix", matrix_path, "matrix file")->required();

    auto* exp_cmd = app.add_subcommand("experiment", "run a named sweep");
    exp_cmd->add_option("name", experiment, "experiment name")->required()->check(CLI::IsMember(experiment_names()));
    exp_cmd->add_option("--n-max", n_max, "largest instance size");
    exp_flags.attach(exp_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*inv_cmd) return cmd_inv(source, inv_flags);
        if (*verify_cmd) return cmd_verify(source, family_path);
        if (*gram_cmd) return cmd_gram(matrix_path);
        if (*exp_cmd) return cmd_experiment(experiment, n_max, exp_flags);
    } catch (const Reported&) {
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitUnknown;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitUsage;
}
