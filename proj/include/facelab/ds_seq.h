#pragma once

// Davenport-Schinzel sequence algebra.
//
// Symbols are plain integers; callers that work with richer alphabets (the
// oriented, split-tagged arcs of a face boundary) intern them first.
// Positions reported back to callers are 1-based.

#include <cstdint>
#include <set>
#include <vector>

namespace facelab {

using Symbol = int;

struct SymbolSequence {
    std::vector<Symbol> elements;
    bool circular = false;

    std::size_t size() const { return elements.size(); }
    bool operator==(const SymbolSequence&) const = default;
};

struct DsCheck {
    bool valid = true;
    /// 1-based positions: an adjacent equal pair or an alternation of length s+2.
    std::vector<std::size_t> violation;
};

/// For circular sequences the first and last elements also count as adjacent;
/// alternations are read linearly from the stored start.
DsCheck is_ds(const SymbolSequence& seq, int s);

/// S_A: drop symbols outside A, then collapse maximal runs (cyclically for
/// circular input).
SymbolSequence restrict_to(const SymbolSequence& seq, const std::set<Symbol>& A);

/// v(j) for j = 1..q: symbols with occurrences at j' <= j < j''.
std::vector<int> active_profile(const SymbolSequence& seq);

/// Exact lambda_s(n) by exhaustive canonical enumeration. Throws InputError
/// when n or s is out of range or the node budget runs out.
long lambda_brute(int n, int s, long node_budget = 50'000'000);

struct Partition {
    std::vector<std::set<Symbol>> classes;
};

struct BlockDecomposition {
    int C = 0;                          ///< total length of the nonempty restrictions
    int k = 0;                          ///< number of nonempty restrictions
    std::vector<std::size_t> delimiter_positions;  ///< delimiter sits after this 1-based position
    std::vector<std::vector<Symbol>> subsequences;  ///< sigma^1 .. sigma^m
    std::vector<std::vector<Symbol>> blocks;
};

/// Cuts a linear run-collapsed sequence after the last position of every
/// non-final run of each restriction, then groups k consecutive pieces per
/// block (the last block takes the remainder).
BlockDecomposition block_decompose(const SymbolSequence& seq, const Partition& part);

/// Greedy slot allocation: a symbol takes the lowest free slot at its first
/// occurrence and releases it at its last. Every symbol must occur at least
/// twice (see drop_singletons); throws InputError when k is below the
/// maximum active count. Empty classes are omitted.
Partition dsa_partition(const SymbolSequence& seq, int k);

/// Removes symbols that occur once and collapses the runs this creates,
/// repeating until every remaining symbol occurs at least twice.
SymbolSequence drop_singletons(const SymbolSequence& seq);

/// Smallest k with A(k, k) >= n where A(1, j) = 2^j, A(i, 1) = A(i-1, 2),
/// A(i, j) = A(i-1, A(i, j-1)).
int inverse_ackermann(std::uint64_t n);

/// Surrogate n * alpha(n) for lambda_3(n).
double lambda3_hat(std::uint64_t n);

}  // namespace facelab
