#include "invlab/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <string>

#include "square_text.hpp"

namespace invlab {

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxWidth) {
        throw UsageError("SymMatrix order out of range: " + std::to_string(n));
    }
}

SymMatrix SymMatrix::from_rows(int n, std::vector<Word> rows) {
    SymMatrix m(n);
    if (rows.size() != static_cast<std::size_t>(n)) {
        throw UsageError("SymMatrix::from_rows: expected " + std::to_string(n) + " rows");
    }
    for (int i = 0; i < n; ++i) {
        if ((rows[static_cast<std::size_t>(i)] & ~low_mask(n)) != 0) {
            throw UsageError("SymMatrix::from_rows: row " + std::to_string(i) + " has bits beyond n");
        }
    }
    m.rows_ = std::move(rows);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (m.at(i, j) != m.at(j, i)) {
                throw UsageError("matrix is not symmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            }
        }
    }
    return m;
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.rows_[static_cast<std::size_t>(i)] = Word{1} << i;
    return m;
}

void SymMatrix::set(int i, int j, int value) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw UsageError("SymMatrix::set: index out of range");
    auto apply = [&](int r, int c) {
        Word bit = Word{1} << c;
        auto& w = rows_[static_cast<std::size_t>(r)];
        w = value ? (w | bit) : (w & ~bit);
    };
    apply(i, j);
    apply(j, i);
}

Word SymMatrix::diagonal() const noexcept {
    Word d = 0;
    for (int i = 0; i < n_; ++i) d |= static_cast<Word>(at(i, i)) << i;
    return d;
}

bool SymMatrix::is_zero() const noexcept {
    return std::all_of(rows_.begin(), rows_.end(), [](Word w) { return w == 0; });
}

SymMatrix SymMatrix::with_diagonal(Word diag) const {
    SymMatrix m = *this;
    for (int i = 0; i < n_; ++i) m.set(i, i, static_cast<int>((diag >> i) & 1));
    return m;
}

SymMatrix SymMatrix::principal(std::span<const int> indices) const {
    SymMatrix m(static_cast<int>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) {
            if (at(indices[a], indices[b])) m.rows_[a] |= Word{1} << b;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

using Rows = std::vector<Word>;

struct Echelon {
    std::vector<Word> basis;      // reduced rows, in insertion order
    std::vector<int> pivots;      // lowest set bit of each basis row
    std::vector<Word> combos;     // which input rows sum to each basis row
    std::vector<int> independent; // input indices that entered the basis
    std::optional<Word> null_combo;
};

// Processes rows in order; records the first dependency found.
Echelon eliminate(std::span<const Word> rows) {
    Echelon e;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Word r = rows[i];
        Word c = Word{1} << i;
        for (std::size_t b = 0; b < e.basis.size(); ++b) {
            if ((r >> e.pivots[b]) & 1) {
                r ^= e.basis[b];
                c ^= e.combos[b];
            }
        }
        if (r == 0) {
            if (!e.null_combo) e.null_combo = c;
            continue;
        }
        e.basis.push_back(r);
        e.pivots.push_back(std::countr_zero(r));
        e.combos.push_back(c);
        e.independent.push_back(static_cast<int>(i));
    }
    return e;
}

} // namespace

int rank_of_rows(std::span<const Word> rows) {
    std::vector<Word> basis;
    std::vector<int> pivots;
    for (Word r : rows) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if ((r >> pivots[b]) & 1) r ^= basis[b];
        }
        if (r != 0) {
            basis.push_back(r);
            pivots.push_back(std::countr_zero(r));
        }
    }
    return static_cast<int>(basis.size());
}

int rank(const SymMatrix& m) { return rank_of_rows(m.rows()); }

// ---------------------------------------------------------------------------
// Gram factorization
//
// Columns are returned as words; column i of U is the vector assigned to
// index i. A factorization of an order-n matrix has columns of width n.

namespace {

int entry(const Rows& m, int i, int j) { return static_cast<int>((m[static_cast<std::size_t>(i)] >> j) & 1); }

Rows permuted(const Rows& m, const std::vector<int>& perm) {
    Rows out(perm.size(), 0);
    for (std::size_t a = 0; a < perm.size(); ++a) {
        for (std::size_t b = 0; b < perm.size(); ++b) {
            if (entry(m, perm[a], perm[b])) out[a] |= Word{1} << b;
        }
    }
    return out;
}

Rows unpermute_columns(const Rows& cols, const std::vector<int>& perm) {
    Rows out(cols.size(), 0);
    for (std::size_t t = 0; t < perm.size(); ++t) out[static_cast<std::size_t>(perm[t])] = cols[t];
    return out;
}

// Congruence by the transvection "index target += index source": P^t M P.
void add_index(Rows& m, int target, int source) {
    m[static_cast<std::size_t>(target)] ^= m[static_cast<std::size_t>(source)];
    const Word tbit = Word{1} << target;
    for (auto& row : m) {
        if ((row >> source) & 1) row ^= tbit;
    }
}

std::vector<int> bring_to_front(int n, std::initializer_list<int> front) {
    std::vector<int> perm(front);
    for (int i = 0; i < n; ++i) {
        if (std::find(perm.begin(), perm.end(), i) == perm.end()) perm.push_back(i);
    }
    return perm;
}

Rows factor_odd(const Rows& m);

// 2x2 words: bit 0 is the first coordinate.
Word apply2(const Word cols[2], Word x) {
    return ((x & 1) ? cols[0] : 0) ^ ((x & 2) ? cols[1] : 0);
}

// Block split on the nonsingular 2x2 principal block {p, j}, p with m_pp = 1.
// M = [[A, B], [B^t, M0]]; recurse on the Schur complement M0 - B^t A^-1 B and
// return U = [[U1, U1 A^-1 B], [0, U2]].
Rows schur_split(const Rows& m, int p, int j) {
    const int n = static_cast<int>(m.size());
    const std::vector<int> perm = bring_to_front(n, {p, j});
    const Rows mp = permuted(m, perm);

    // The only nonsingular blocks with a 1 in the corner: I and [[1,1],[1,0]].
    Word u1[2];
    Word ainv[2];
    if (entry(mp, 0, 1) == 0) {
        u1[0] = 0b01; u1[1] = 0b10;
        ainv[0] = 0b01; ainv[1] = 0b10;
    } else {
        u1[0] = 0b01; u1[1] = 0b11;   // (1,0) and (1,1)
        ainv[0] = 0b10; ainv[1] = 0b11; // [[0,1],[1,1]]
    }

    const int r = n - 2;
    std::vector<Word> bcol(static_cast<std::size_t>(r));
    std::vector<Word> ainv_b(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a) {
        bcol[static_cast<std::size_t>(a)] =
            static_cast<Word>(entry(mp, 0, a + 2)) | (static_cast<Word>(entry(mp, 1, a + 2)) << 1);
        ainv_b[static_cast<std::size_t>(a)] = apply2(ainv, bcol[static_cast<std::size_t>(a)]);
    }
    Rows schur(static_cast<std::size_t>(r), 0);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) {
            int v = entry(mp, a + 2, b + 2) ^
                    parity(bcol[static_cast<std::size_t>(a)] & ainv_b[static_cast<std::size_t>(b)]);
            if (v) schur[static_cast<std::size_t>(a)] |= Word{1} << b;
        }
    }
    const Rows u2 = factor_odd(schur);

    Rows cols(static_cast<std::size_t>(n), 0);
    cols[0] = u1[0];
    cols[1] = u1[1];
    for (int a = 0; a < r; ++a) {
        cols[static_cast<std::size_t>(a + 2)] =
            apply2(u1, ainv_b[static_cast<std::size_t>(a)]) | (u2[static_cast<std::size_t>(a)] << 2);
    }
    return unpermute_columns(cols, perm);
}

// m_pp = 1 and every block {p, j} is singular, i.e. m_pj = m_jj for all j.
// Clear row p by transvections, set the (1,1) entry, split, then replace the
// first two columns by (1, a1 + a2).
Rows normalize_and_adjust(const Rows& m, int p) {
    const int n = static_cast<int>(m.size());
    const std::vector<int> perm = bring_to_front(n, {p});
    Rows c = permuted(m, perm);

    const Word cleared = c[0] & ~Word{1};
    for (int j = 1; j < n; ++j) {
        if ((cleared >> j) & 1) add_index(c, j, 0);
    }
    c[1] |= Word{1} << 1;
    const Rows v = schur_split(c, 0, 1);

    Rows u = v;
    u[0] = low_mask(n);
    u[1] = v[0] ^ v[1];
    for (int j = 1; j < n; ++j) {
        if ((cleared >> j) & 1) u[static_cast<std::size_t>(j)] ^= u[0];
    }
    return unpermute_columns(u, perm);
}

Rows factor_unit_diagonal(const Rows& m, int p) {
    const int n = static_cast<int>(m.size());
    for (int j = 0; j < n; ++j) {
        if (j != p && entry(m, j, j) != entry(m, p, j)) return schur_split(m, p, j);
    }
    return normalize_and_adjust(m, p);
}

int first_unit_diagonal(const Rows& m) {
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
        if (entry(m, i, i)) return i;
    }
    return -1;
}

Rows factor_odd(const Rows& m) {
    const int n = static_cast<int>(m.size());
    if (n == 1) return {m[0] & 1};
    const int p = first_unit_diagonal(m);
    if (p >= 0) return factor_unit_diagonal(m, p);

    // Zero diagonal: factor M + E11, then add the all-ones vector to column 1.
    Rows c0 = m;
    c0[0] ^= 1;
    Rows cols = factor_unit_diagonal(c0, 0);
    cols[0] ^= low_mask(n);
    return cols;
}

std::optional<Rows> factor_even(const Rows& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return Rows{};
    const int p = first_unit_diagonal(m);
    if (p >= 0) {
        const std::vector<int> perm = bring_to_front(n, {p});
        const Rows mp = permuted(m, perm);
        const Word b = mp[0] >> 1;
        Rows sub(static_cast<std::size_t>(n - 1), 0);
        for (int a = 0; a < n - 1; ++a) {
            for (int c = 0; c < n - 1; ++c) {
                int v = entry(mp, a + 1, c + 1) ^ static_cast<int>((b >> a) & (b >> c) & 1);
                if (v) sub[static_cast<std::size_t>(a)] |= Word{1} << c;
            }
        }
        const Rows u2 = factor_odd(sub);
        Rows cols(static_cast<std::size_t>(n), 0);
        cols[0] = 1;
        for (int a = 0; a < n - 1; ++a) {
            cols[static_cast<std::size_t>(a + 1)] = ((b >> a) & 1) | (u2[static_cast<std::size_t>(a)] << 1);
        }
        return unpermute_columns(cols, perm);
    }

    const Echelon e = eliminate(m);
    if (!e.null_combo) return std::nullopt; // alternating and nonsingular

    // Mx = 0: move x into position p by transvections, which zeroes row p.
    const Word x = *e.null_combo;
    const int pivot = std::countr_zero(x);
    Rows c = m;
    for (int i = 0; i < n; ++i) {
        if (i != pivot && ((x >> i) & 1)) add_index(c, pivot, i);
    }
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
        if (i != pivot) rest.push_back(i);
    }
    Rows sub(rest.size(), 0);
    for (std::size_t a = 0; a < rest.size(); ++a) {
        for (std::size_t b = 0; b < rest.size(); ++b) {
            if (entry(c, rest[a], rest[b])) sub[a] |= Word{1} << b;
        }
    }
    const Rows u2 = factor_odd(sub);
    Rows cols(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 0; t < rest.size(); ++t) cols[static_cast<std::size_t>(rest[t])] = u2[t];
    Word acc = 0;
    for (int i = 0; i < n; ++i) {
        if ((x >> i) & 1) acc ^= cols[static_cast<std::size_t>(i)];
    }
    cols[static_cast<std::size_t>(pivot)] = acc;
    return cols;
}

Rows as_rows(const SymMatrix& m) { return Rows(m.rows().begin(), m.rows().end()); }

std::vector<BitVec> to_bitvecs(const Rows& cols, int width) {
    std::vector<BitVec> out;
    out.reserve(cols.size());
    for (Word c : cols) out.emplace_back(width, c);
    return out;
}

// Inverse of a nonsingular matrix by Gauss-Jordan.
Rows invert(const Rows& m) {
    const int n = static_cast<int>(m.size());
    Rows a = m;
    Rows inv(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)] = Word{1} << i;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (entry(a, r, col)) { piv = r; break; }
        }
        if (piv < 0) throw InvariantViolation("invert: matrix is singular");
        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
        std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(piv)]);
        for (int r = 0; r < n; ++r) {
            if (r != col && entry(a, r, col)) {
                a[static_cast<std::size_t>(r)] ^= a[static_cast<std::size_t>(col)];
                inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(col)];
            }
        }
    }
    return inv;
}

} // namespace

std::optional<GramFactorization> gram_factor(const SymMatrix& m) {
    const int n = m.n();
    std::optional<Rows> cols;
    if (n % 2 == 1) {
        cols = factor_odd(as_rows(m));
    } else {
        cols = factor_even(as_rows(m));
    }
    if (!cols) return std::nullopt;
    GramFactorization g{n, to_bitvecs(*cols, n), m};
    if (gram_of(g.columns) != m) {
        throw InvariantViolation("gram_factor produced a witness that does not reproduce the target");
    }
    return g;
}

SymMatrix gram_of(std::span<const BitVec> vectors) {
    const int n = static_cast<int>(vectors.size());
    if (n > kMaxWidth) throw UsageError("gram_of: more than 64 vectors");
    std::vector<Word> rows(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (dot(vectors[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(j)])) {
                rows[static_cast<std::size_t>(i)] |= Word{1} << j;
            }
        }
    }
    return SymMatrix::from_rows(n, std::move(rows));
}

int min_gram_dim(const SymMatrix& m) {
    if (m.is_zero()) return 0;
    const int r = rank(m);
    return m.diagonal() != 0 ? r : r + 1;
}

std::vector<BitVec> realize_min(const SymMatrix& m) {
    const int n = m.n();
    if (m.is_zero()) return std::vector<BitVec>(static_cast<std::size_t>(n), BitVec::zeros(0));

    // A maximal independent set of rows spans the row space and its principal
    // block is nonsingular; M = M_{.B} M_B^-1 M_{B.}.
    const Echelon e = eliminate(m.rows());
    const std::vector<int>& basis = e.independent;
    const int r = static_cast<int>(basis.size());
    const SymMatrix block = m.principal(basis);

    Rows ub;
    int width = r;
    if (block.diagonal() != 0) {
        auto g = gram_factor(block);
        if (!g) throw InvariantViolation("realize_min: non-alternating block did not factor");
        for (const auto& c : g->columns) ub.push_back(c.bits());
    } else {
        // Alternating block of even order: embed as [[B, 0], [0, 1]] and drop the last column.
        width = r + 1;
        Rows ext = as_rows(block);
        ext.push_back(Word{1} << r);
        Rows cols = factor_odd(ext);
        cols.pop_back();
        ub = std::move(cols);
    }

    const Rows block_inv = invert(as_rows(block));
    std::vector<BitVec> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Word rhs = 0;
        for (int t = 0; t < r; ++t) rhs |= static_cast<Word>(m.at(basis[static_cast<std::size_t>(t)], j)) << t;
        Word coeff = 0;
        for (int t = 0; t < r; ++t) coeff |= static_cast<Word>(parity(block_inv[static_cast<std::size_t>(t)] & rhs)) << t;
        Word v = 0;
        for (int t = 0; t < r; ++t) {
            if ((coeff >> t) & 1) v ^= ub[static_cast<std::size_t>(t)];
        }
        out.emplace_back(width, v);
    }
    if (gram_of(out) != m) throw InvariantViolation("realize_min produced a wrong witness");
    return out;
}

std::optional<std::vector<BitVec>> realize_oracle(const SymMatrix& m, int k, std::uint64_t budget) {
    const int n = m.n();
    if (k < 0 || k > kMaxWidth) throw UsageError("realize_oracle: k out of range");
    const long long bits = static_cast<long long>(n) * k;
    if (bits >= 63 || (std::uint64_t{1} << bits) > budget) {
        throw ResourceError("realize_oracle: 2^(n*k) = 2^" + std::to_string(bits) + " exceeds budget " +
                            std::to_string(budget));
    }
    const Word limit = Word{1} << k;
    std::vector<Word> chosen(static_cast<std::size_t>(n), 0);

    // Plain exhaustive DFS; a branch is abandoned only once one of its
    // already-fixed products is wrong.
    auto extend = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        for (Word x = 0; x < limit; ++x) {
            bool ok = parity(x) == m.at(i, i);
            for (int j = 0; ok && j < i; ++j) {
                ok = parity(x & chosen[static_cast<std::size_t>(j)]) == m.at(i, j);
            }
            if (!ok) continue;
            chosen[static_cast<std::size_t>(i)] = x;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    return to_bitvecs(chosen, k);
}

FreeDiagonalDim min_gram_dim_free_diag(const SymMatrix& offdiag, int max_n) {
    const int n = offdiag.n();
    if (n > max_n) {
        throw ResourceError("min_gram_dim_free_diag: n = " + std::to_string(n) + " exceeds limit " +
                            std::to_string(max_n));
    }
    const SymMatrix base = offdiag.with_diagonal(0);
    FreeDiagonalDim best{kMaxWidth + 1, BitVec::zeros(n)};
    const Word count = Word{1} << n;
    for (Word d = 0; d < count; ++d) {
        const int k = min_gram_dim(base.with_diagonal(d));
        if (k < best.k) best = {k, BitVec(n, d)};
    }
    return best;
}

SymMatrix read_matrix(std::istream& in) {
    auto sq = detail::read_square_bits(in, "matrix");
    return SymMatrix::from_rows(sq.n, std::move(sq.rows));
}

void write_matrix(std::ostream& out, const SymMatrix& m) {
    detail::write_square_bits(out, m.n(), std::vector<Word>(m.rows().begin(), m.rows().end()));
}

} // namespace invlab
