#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "invlab/bitvec.hpp"

namespace invlab {

// Symmetric n x n matrix over F2, n <= 64, one word per row.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n);

    // Validates symmetry and that no row has bits beyond n.
    static SymMatrix from_rows(int n, std::vector<Word> rows);
    static SymMatrix identity(int n);
    static SymMatrix zero(int n) { return SymMatrix(n); }

    int n() const noexcept { return n_; }
    int at(int i, int j) const noexcept { return (rows_[static_cast<std::size_t>(i)] >> j) & 1; }
    Word row(int i) const noexcept { return rows_[static_cast<std::size_t>(i)]; }
    std::span<const Word> rows() const noexcept { return rows_; }

    // Sets m_ij and m_ji.
    void set(int i, int j, int value);

    Word diagonal() const noexcept;
    bool is_zero() const noexcept;

    // Same off-diagonal entries, diagonal replaced by `diag`.
    SymMatrix with_diagonal(Word diag) const;

    // Principal submatrix on the given indices, in the given order.
    SymMatrix principal(std::span<const int> indices) const;

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    int n_ = 0;
    std::vector<Word> rows_;
};

struct GramFactorization {
    int k = 0;
    std::vector<BitVec> columns;
    SymMatrix target;
};

// Rank over F2 of a list of row words.
int rank_of_rows(std::span<const Word> rows);

int rank(const SymMatrix& m);

// Gram factorization with k = n. Odd n always succeeds. Even n succeeds
// iff some diagonal entry is 1 or m is singular; otherwise nullopt.
std::optional<GramFactorization> gram_factor(const SymMatrix& m);

// m_ij = dot(v_i, v_j). All widths must agree.
SymMatrix gram_of(std::span<const BitVec> vectors);

// Least k such that vectors in F2^k realize m as a Gram matrix.
int min_gram_dim(const SymMatrix& m);

// Vectors of width min_gram_dim(m) whose Gram matrix is m.
std::vector<BitVec> realize_min(const SymMatrix& m);

inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 24;

// Exhaustive search for vectors in F2^k with Gram matrix m. Throws
// ResourceError when 2^(n*k) exceeds `budget`.
std::optional<std::vector<BitVec>> realize_oracle(const SymMatrix& m, int k,
                                                  std::uint64_t budget = kDefaultOracleBudget);

struct FreeDiagonalDim {
    int k = 0;
    BitVec diag;
};

inline constexpr int kDefaultFreeDiagLimit = 20;

// Minimizes min_gram_dim over every choice of diagonal. The diagonal of
// `offdiag` is ignored. Returns the smallest achieving diagonal in numeric order.
FreeDiagonalDim min_gram_dim_free_diag(const SymMatrix& offdiag, int max_n = kDefaultFreeDiagLimit);

// Text format: line `n`, then n lines of n characters from {0,1}.
SymMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const SymMatrix& m);

} // namespace invlab
