#pragma once

#include <span>
#include <vector>

#include "invlab/digraph.hpp"

namespace invlab {

// Vertex numbering: docs count v1..vn, the wire format counts 0..n-1, so vi
// is vertex i-1 everywhere in code.

// 0 -> 1 -> 2 -> 0.
Digraph c3();

// Arcs i -> j for all i < j.
Digraph transitive(int n);

// Transitive tournament with its Hamiltonian path v1 v2 ... vn reversed.
Digraph qn(int n);

// X_i = {v_{2i}, v_{2i+1}} for 1 <= i <= floor((n-1)/2).
InversionFamily qn_family(int n);

// Disjoint union, L first, plus every arc L -> R.
Digraph dijoin(const Digraph& left, const Digraph& right);

// blow_up(transitive(k), parts).
Digraph k_join(std::span<const Digraph> parts);

// H[D1, ..., Dn]. Parts are laid out consecutively in part order.
Digraph blow_up(const Digraph& host, std::span<const Digraph> parts);

// First vertex of each part in the blow-up numbering.
std::vector<int> part_offsets(std::span<const Digraph> parts);

// Family for dijoin(c3(), d) from an even-weight k-decycling family of d with
// k odd >= 3: the cycle gets vectors 0, 1, 1 and d keeps its own.
InversionFamily extend_family_to_c3_dijoin(const Digraph& d, const InversionFamily& f);

// Z_i = Y_1 ∪ X'_i (1 <= i <= k) and Z_{k+j-1} = Y_j (2 <= j <= n), where
// X'_i blows X_i up to whole parts. The result is checked; a failure throws
// InvariantViolation naming the residual cycle.
InversionFamily compose_blowup_family(const Digraph& host, const InversionFamily& host_family,
                                      std::span<const Digraph> parts,
                                      std::span<const InversionFamily> part_families);

} // namespace invlab
