#pragma once

#include <random>
#include <string_view>
#include <vector>

#include "invlab/digraph.hpp"
#include "invlab/f2linalg.hpp"

namespace invlab::testing {

// "011/101/110"
inline SymMatrix matrix(std::string_view rows) {
    std::vector<Word> out;
    Word cur = 0;
    int col = 0;
    for (char c : rows) {
        if (c == '/') {
            out.push_back(cur);
            cur = 0;
            col = 0;
            continue;
        }
        if (c == '1') cur |= Word{1} << col;
        ++col;
    }
    out.push_back(cur);
    const int n = static_cast<int>(out.size());
    return SymMatrix::from_rows(n, std::move(out));
}

inline SymMatrix random_symmetric(int n, std::mt19937_64& rng) {
    SymMatrix m(n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) m.set(i, j, coin(rng) ? 1 : 0);
    }
    return m;
}

inline Digraph random_tournament(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> code(0, (std::uint64_t{1} << pair_count(n)) - 1);
    return tournament_from_code(n, n < 2 ? 0 : code(rng));
}

// Each pair gets no arc, u -> v or v -> u with equal odds.
inline Digraph random_oriented(int n, std::mt19937_64& rng) {
    Digraph d(n);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const int c = pick(rng);
            if (c == 1) d.add_arc(u, v);
            if (c == 2) d.add_arc(v, u);
        }
    }
    return d;
}

inline InversionFamily random_family(int n, int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> mask(0, n == 0 ? 0 : low_mask(n));
    InversionFamily f{n, {}};
    for (int i = 0; i < k; ++i) f.sets.push_back(VertexSet{mask(rng)});
    return f;
}

} // namespace invlab::testing
