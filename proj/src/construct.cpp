#include "invlab/construct.hpp"

#include <numeric>
#include <sstream>
#include <string>

namespace invlab {

Digraph c3() {
    Digraph d(3);
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    d.add_arc(2, 0);
    return d;
}

Digraph transitive(int n) {
    if (n < 0) throw UsageError("transitive: negative order");
    Digraph d(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) d.add_arc(i, j);
    }
    return d;
}

Digraph qn(int n) {
    if (n < 1) throw UsageError("qn: order must be >= 1");
    Digraph d(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1) {
                d.add_arc(j, i);
            } else {
                d.add_arc(i, j);
            }
        }
    }
    return d;
}

InversionFamily qn_family(int n) {
    if (n < 1) throw UsageError("qn_family: order must be >= 1");
    InversionFamily f{n, {}};
    // {v_2i, v_2i+1} is {2i-1, 2i} zero-based.
    for (int i = 1; i <= (n - 1) / 2; ++i) f.sets.push_back(VertexSet::of({2 * i - 1, 2 * i}));
    return f;
}

std::vector<int> part_offsets(std::span<const Digraph> parts) {
    std::vector<int> offsets;
    int total = 0;
    for (const auto& p : parts) {
        offsets.push_back(total);
        total += p.n();
    }
    return offsets;
}

Digraph blow_up(const Digraph& host, std::span<const Digraph> parts) {
    if (static_cast<int>(parts.size()) != host.n()) {
        throw UsageError("blow_up: host has " + std::to_string(host.n()) + " vertices but " +
                         std::to_string(parts.size()) + " parts were given");
    }
    const std::vector<int> offsets = part_offsets(parts);
    int total = 0;
    for (const auto& p : parts) total += p.n();
    if (total > kMaxVertices) throw UsageError("blow_up: result has more than 64 vertices");

    std::vector<Word> blocks;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        blocks.push_back(low_mask(parts[i].n()) << offsets[i]);
    }
    std::vector<Word> rows(static_cast<std::size_t>(total), 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Word external = 0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (host.has_arc(static_cast<int>(i), static_cast<int>(j))) external |= blocks[j];
        }
        for (int x = 0; x < parts[i].n(); ++x) {
            rows[static_cast<std::size_t>(offsets[i] + x)] = external | (parts[i].out(x) << offsets[i]);
        }
    }
    return Digraph::from_rows(total, std::move(rows));
}

Digraph dijoin(const Digraph& left, const Digraph& right) {
    const Digraph parts[] = {left, right};
    return blow_up(transitive(2), parts);
}

Digraph k_join(std::span<const Digraph> parts) {
    return blow_up(transitive(static_cast<int>(parts.size())), parts);
}

InversionFamily extend_family_to_c3_dijoin(const Digraph& d, const InversionFamily& f) {
    if (f.n != d.n()) throw UsageError("extend_family_to_c3_dijoin: family is for a different vertex count");
    const int k = f.k();
    if (k < 3 || k % 2 == 0) {
        throw UsageError("extend_family_to_c3_dijoin: k must be odd and >= 3, got " + std::to_string(k));
    }
    if (!decycles(d, f)) throw UsageError("extend_family_to_c3_dijoin: family does not decycle D");
    const VectorAssignment a = family_to_assignment(f);
    if (!is_even_weight_assignment(a)) {
        throw UsageError("extend_family_to_c3_dijoin: some characteristic vector has odd weight");
    }

    VectorAssignment ext{k, {0, low_mask(k), low_mask(k)}};
    ext.vecs.insert(ext.vecs.end(), a.vecs.begin(), a.vecs.end());
    InversionFamily out = assignment_to_family(ext);
    const Digraph joined = dijoin(c3(), d);
    if (!decycles(joined, out)) {
        throw InvariantViolation("extend_family_to_c3_dijoin: extended family does not decycle C3 => D");
    }
    return out;
}

InversionFamily compose_blowup_family(const Digraph& host, const InversionFamily& host_family,
                                      std::span<const Digraph> parts,
                                      std::span<const InversionFamily> part_families) {
    const int n = host.n();
    if (n < 1) throw UsageError("compose_blowup_family: host must have a vertex");
    if (host_family.n != n) throw UsageError("compose_blowup_family: host family has wrong vertex count");
    if (static_cast<int>(parts.size()) != n || static_cast<int>(part_families.size()) != n) {
        throw UsageError("compose_blowup_family: need one part and one part family per host vertex");
    }
    if (!decycles(host, host_family)) throw UsageError("compose_blowup_family: host family does not decycle T");
    if (!is_even_weight_assignment(family_to_assignment(host_family))) {
        throw UsageError("compose_blowup_family: host family has an odd-weight characteristic vector");
    }
    for (int j = 0; j < n; ++j) {
        const auto& y = part_families[static_cast<std::size_t>(j)];
        if (y.n != parts[static_cast<std::size_t>(j)].n() || y.k() != 1) {
            throw UsageError("compose_blowup_family: part family " + std::to_string(j) +
                             " must be a single set over the part's vertices");
        }
        if (!decycles(parts[static_cast<std::size_t>(j)], y)) {
            throw UsageError("compose_blowup_family: part family " + std::to_string(j) + " does not decycle its part");
        }
    }

    const Digraph g = blow_up(host, parts);
    const std::vector<int> offsets = part_offsets(parts);
    auto lift = [&](int part, Word local) { return local << offsets[static_cast<std::size_t>(part)]; };
    const Word y1 = lift(0, part_families[0].sets[0].mask);

    InversionFamily z{g.n(), {}};
    for (const VertexSet& x : host_family.sets) {
        Word blown = 0;
        for (Word m = x.mask; m != 0; m &= m - 1) {
            const int u = std::countr_zero(m);
            blown |= lift(u, low_mask(parts[static_cast<std::size_t>(u)].n()));
        }
        z.sets.push_back({y1 | blown});
    }
    for (int j = 1; j < n; ++j) z.sets.push_back({lift(j, part_families[static_cast<std::size_t>(j)].sets[0].mask)});

    if (auto cycle = find_cycle(apply_family(g, z))) {
        std::ostringstream msg;
        msg << "compose_blowup_family: composed family leaves the cycle";
        for (int v : *cycle) msg << ' ' << v;
        throw FamilyVerificationError(msg.str(), *cycle);
    }
    return z;
}

} // namespace invlab
