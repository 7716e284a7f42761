#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "invlab/digraph.hpp"

namespace invlab {

// Grammar (whitespace insensitive):
//
//   expr  := ident | ident '(' args ')'
//   ident := c3 | tt | qn | rev | dijoin | join | blowup
//
//   c3                      directed 3-cycle
//   tt(n)  qn(n)            transitive tournament, Q_n
//   rev(e)                  all arcs reversed
//   dijoin(l, r)            l => r
//   join(e1, ..., ek)       [e1, ..., ek]
//   blowup(h; e1, ..., en)  h[e1, ..., en]
//   blowup(h; e, count)     h[e]_count, count must equal |V(h)|
struct Expr {
    enum class Kind { C3, Transitive, Qn, Reverse, Dijoin, Join, Blowup, BlowupUniform };

    Kind kind = Kind::C3;
    int count = 0;               // tt / qn order, uniform blow-up count
    std::vector<Expr> children;  // blow-ups: host first, then parts
    std::size_t offset = 0;      // byte offset of the identifier

    // Structural equality; offsets are ignored.
    friend bool operator==(const Expr& a, const Expr& b) {
        return a.kind == b.kind && a.count == b.count && a.children == b.children;
    }
};

// Throws ParseError carrying the byte offset of the problem.
Expr parse_expr(std::string_view text);

std::string pretty_print(const Expr& e);

// Semantic errors (blow-up arity, oversize results) throw ParseError at the
// offending node.
Digraph evaluate(const Expr& e);

inline Digraph build_from_expr(std::string_view text) { return evaluate(parse_expr(text)); }

} // namespace invlab
