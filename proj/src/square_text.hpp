#pragma once

#include <iosfwd>
#include <vector>

#include "invlab/bitvec.hpp"

namespace invlab::detail {

struct SquareBits {
    int n = 0;
    std::vector<Word> rows;
};

// Reads `n` then n rows of n characters from {0,1}. Blank lines are skipped.
SquareBits read_square_bits(std::istream& in, const char* what);

void write_square_bits(std::ostream& out, int n, const std::vector<Word>& rows);

} // namespace invlab::detail
