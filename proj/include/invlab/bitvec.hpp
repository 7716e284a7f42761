#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "invlab/errors.hpp"

namespace invlab {

using Word = std::uint64_t;

inline constexpr int kMaxWidth = 64;

constexpr Word low_mask(int width) {
    return width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
}

constexpr int parity(Word w) { return std::popcount(w) & 1; }

// Row vector over F2 of width <= 64. Coordinate i is bit i.
class BitVec {
public:
    constexpr BitVec() = default;
    BitVec(int width, Word bits) : width_(width), bits_(bits) {
        if (width < 0 || width > kMaxWidth) {
            throw UsageError("BitVec width out of range: " + std::to_string(width));
        }
        if ((bits & ~low_mask(width)) != 0) {
            throw UsageError("BitVec has bits beyond its width");
        }
    }

    static BitVec zeros(int width) { return BitVec(width, 0); }
    static BitVec ones(int width) { return BitVec(width, low_mask(width)); }

    // "101" -> coordinates 0 and 2 set.
    static BitVec from_string(std::string_view s) {
        if (s.size() > kMaxWidth) throw UsageError("BitVec string too long");
        Word bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                bits |= Word{1} << i;
            } else if (s[i] != '0') {
                throw UsageError("BitVec string must contain only 0 and 1");
            }
        }
        return BitVec(static_cast<int>(s.size()), bits);
    }

    int width() const noexcept { return width_; }
    Word bits() const noexcept { return bits_; }
    bool get(int i) const noexcept { return (bits_ >> i) & 1; }
    int weight() const noexcept { return std::popcount(bits_); }
    bool is_zero() const noexcept { return bits_ == 0; }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(width_), '0');
        for (int i = 0; i < width_; ++i) {
            if (get(i)) s[static_cast<std::size_t>(i)] = '1';
        }
        return s;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;

    friend BitVec operator+(const BitVec& a, const BitVec& b) {
        if (a.width_ != b.width_) throw UsageError("BitVec width mismatch in sum");
        return BitVec(a.width_, a.bits_ ^ b.bits_);
    }

private:
    int width_ = 0;
    Word bits_ = 0;
};

// Scalar product over F2.
inline int dot(const BitVec& u, const BitVec& v) {
    if (u.width() != v.width()) {
        throw UsageError("dot: width mismatch (" + std::to_string(u.width()) + " vs " +
                         std::to_string(v.width()) + ")");
    }
    return parity(u.bits() & v.bits());
}

} // namespace invlab
