#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsmdiag/fsm.hpp"

namespace fsmdiag
{

using Pair = std::pair<StateIndex, StateIndex>;

// Set of ordered state pairs over a fixed state count n, stored as an n x n
// bit matrix. Each row is padded to whole 64 bit words so that distinct rows
// never share a word.
class PairRelation
{
    std::size_t _n = 0;
    std::size_t _words = 0;
    std::vector<std::uint64_t> _bits;

public:
    PairRelation() = default;
    explicit PairRelation( std::size_t n );

    static PairRelation full( std::size_t n );
    static PairRelation diagonal( std::size_t n );
    // first in `a`, second in `b`
    static PairRelation product( const StateMask& a, const StateMask& b );
    static PairRelation from_pairs( std::size_t n, std::span<const Pair> pairs );

    [[nodiscard]] std::size_t states() const { return _n; }
    [[nodiscard]] std::size_t words_per_row() const { return _words; }

    [[nodiscard]] bool contains( StateIndex i, StateIndex j ) const
    {
        return ( _bits[ i * _words + j / 64 ] >> ( j % 64 ) ) & 1U;
    }
    void insert( StateIndex i, StateIndex j ) { _bits[ i * _words + j / 64 ] |= std::uint64_t{ 1 } << ( j % 64 ); }
    void erase( StateIndex i, StateIndex j ) { _bits[ i * _words + j / 64 ] &= ~( std::uint64_t{ 1 } << ( j % 64 ) ); }

    [[nodiscard]] std::span<std::uint64_t> row( StateIndex i ) { return { _bits.data() + i * _words, _words }; }
    [[nodiscard]] std::span<const std::uint64_t> row( StateIndex i ) const
    {
        return { _bits.data() + i * _words, _words };
    }

    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool empty() const;
    [[nodiscard]] bool is_symmetric() const;
    [[nodiscard]] bool is_subset_of( const PairRelation& other ) const;
    [[nodiscard]] bool intersects( const PairRelation& other ) const;

    [[nodiscard]] PairRelation transpose() const;
    [[nodiscard]] PairRelation symmetric_closure() const;
    [[nodiscard]] PairRelation complement() const;

    PairRelation& operator&=( const PairRelation& other );
    PairRelation& operator|=( const PairRelation& other );
    PairRelation& operator-=( const PairRelation& other );

    friend PairRelation operator&( PairRelation a, const PairRelation& b ) { return a &= b; }
    friend PairRelation operator|( PairRelation a, const PairRelation& b ) { return a |= b; }
    friend PairRelation operator-( PairRelation a, const PairRelation& b ) { return a -= b; }
    friend bool operator==( const PairRelation& a, const PairRelation& b ) = default;

    // Pairs in row major order.
    [[nodiscard]] std::vector<Pair> pairs() const;
    [[nodiscard]] std::vector<StateIndex> row_members( StateIndex i ) const;

    // Bytes held by the bit matrix.
    [[nodiscard]] std::size_t memory_bytes() const { return _bits.size() * sizeof( std::uint64_t ); }
};

// Π: pairs with equal labels.
[[nodiscard]] PairRelation equal_output_pairs( const Fsm& m );

// Pairs with exactly one member in the critical set: (Ω×Ω̄) ∪ (Ω̄×Ω).
[[nodiscard]] PairRelation mixed_pairs( const StateMask& critical );

// Adjacency matrix of m: (i,j) present iff (i,j) is a transition.
[[nodiscard]] PairRelation adjacency( const Fsm& m );

// Pairs printed with state names, "{(1,3),(3,1)}".
[[nodiscard]] std::string format_pairs( const Fsm& m, const PairRelation& r );

// Unordered pairs (i <= j by index) with off diagonal members listed first,
// used for the compact "{...}⁻ ∪ Θ" style output.
struct CompactPairs
{
    std::vector<Pair> off_diagonal; // i < j, both orders present in the relation
    std::vector<Pair> one_sided;     // present in only one order
    std::vector<StateIndex> diagonal;
};

[[nodiscard]] CompactPairs compact( const PairRelation& r );

} // namespace fsmdiag
