#include "square_text.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "invlab/errors.hpp"

namespace invlab::detail {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line.erase(0, start);
        return true;
    }
    return false;
}

} // namespace

SquareBits read_square_bits(std::istream& in, const char* what) {
    std::string line;
    if (!next_content_line(in, line)) {
        throw UsageError(std::string(what) + ": missing order line");
    }
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(line, &used);
        if (used != line.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": bad order line '" + line + "'");
    }
    if (n < 0 || n > kMaxWidth) {
        throw UsageError(std::string(what) + ": order must be in 0..64, got " + std::to_string(n));
    }
    SquareBits out{n, std::vector<Word>(static_cast<std::size_t>(n), 0)};
    for (int i = 0; i < n; ++i) {
        if (!next_content_line(in, line)) {
            throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " rows, got " +
                             std::to_string(i));
        }
        if (line.size() != static_cast<std::size_t>(n)) {
            throw UsageError(std::string(what) + ": row " + std::to_string(i) + " has length " +
                             std::to_string(line.size()) + ", expected " + std::to_string(n));
        }
        for (int j = 0; j < n; ++j) {
            char c = line[static_cast<std::size_t>(j)];
            if (c == '1') {
                out.rows[static_cast<std::size_t>(i)] |= Word{1} << j;
            } else if (c != '0') {
                throw UsageError(std::string(what) + ": row " + std::to_string(i) +
                                 " contains a character other than 0/1");
            }
        }
    }
    if (next_content_line(in, line)) {
        throw UsageError(std::string(what) + ": trailing content after " + std::to_string(n) + " rows");
    }
    return out;
}

void write_square_bits(std::ostream& out, int n, const std::vector<Word>& rows) {
    out << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out << (((rows[static_cast<std::size_t>(i)] >> j) & 1) ? '1' : '0');
        }
        out << '\n';
    }
}

} // namespace invlab::detail
