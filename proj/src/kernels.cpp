#include "fsmdiag/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace fsmdiag
{

Graph::Graph( const Fsm& m )
        : succ( m.size() ), pre( m.size() ), succ_matrix( m.size() ), pre_matrix( m.size() )
{
    for( auto [ i, j ] : m.transitions() )
    {
        succ[ i ].push_back( j );
        pre[ j ].push_back( i );
        succ_matrix.insert( i, j );
        pre_matrix.insert( j, i );
    }
}

namespace kernels
{

namespace
{

// Row i of the result is  base(i,·) ∩ image( ∪_{p ∈ step_a[i]} cur(p,·) ),
// where image(U) = ∪_{q ∈ U} image_b(q,·). `merge` combines the computed row
// with the previous content of the output row.
template<typename Merge>
void neighbour_row( StateIndex i, const PairRelation& cur, const Adjacency& step_a, const PairRelation& image_b,
                    const PairRelation& base, PairRelation& out, std::vector<std::uint64_t>& u,
                    std::vector<std::uint64_t>& v, Merge merge )
{
    const auto words = cur.words_per_row();
    std::fill( u.begin(), u.end(), 0 );
    std::fill( v.begin(), v.end(), 0 );
    for( auto p : step_a[ i ] )
    {
        auto r = cur.row( p );
        for( std::size_t w = 0; w < words; ++w )
            u[ w ] |= r[ w ];
    }
    for( std::size_t w = 0; w < words; ++w )
    {
        auto bits = u[ w ];
        while( bits )
        {
            auto q = static_cast<StateIndex>( w * 64 + std::countr_zero( bits ) );
            bits &= bits - 1;
            auto r = image_b.row( q );
            for( std::size_t x = 0; x < words; ++x )
                v[ x ] |= r[ x ];
        }
    }
    auto b = base.row( i );
    auto o = out.row( i );
    for( std::size_t w = 0; w < words; ++w )
        o[ w ] = merge( o[ w ], b[ w ] & v[ w ] );
}

template<typename Merge>
void sweep_serial( const PairRelation& cur, const Adjacency& step_a, const PairRelation& image_b,
                   const PairRelation& base, PairRelation& out, Merge merge )
{
    const auto n = cur.states();
    std::vector<std::uint64_t> u( cur.words_per_row() ), v( cur.words_per_row() );
    for( StateIndex i = 0; i < n; ++i )
        neighbour_row( i, cur, step_a, image_b, base, out, u, v, merge );
}

template<typename Merge>
void sweep_parallel( const PairRelation& cur, const Adjacency& step_a, const PairRelation& image_b,
                     const PairRelation& base, PairRelation& out, Merge merge )
{
    const auto n = static_cast<long>( cur.states() );
#pragma omp parallel
    {
        std::vector<std::uint64_t> u( cur.words_per_row() ), v( cur.words_per_row() );
#pragma omp for schedule( dynamic, 8 )
        for( long i = 0; i < n; ++i )
            neighbour_row( static_cast<StateIndex>( i ), cur, step_a, image_b, base, out, u, v, merge );
    }
}

template<typename Merge>
void sweep( Exec exec, const PairRelation& cur, const Adjacency& step_a, const PairRelation& image_b,
            const PairRelation& base, PairRelation& out, Merge merge )
{
    if( exec == Exec::parallel )
        sweep_parallel( cur, step_a, image_b, base, out, merge );
    else
        sweep_serial( cur, step_a, image_b, base, out, merge );
}

} // namespace

PairRelation grow_step( const PairRelation& cur, const Graph& a, const Graph& b, const PairRelation& allowed,
                        Exec exec )
{
    // j has a predecessor q with (p,q) ∈ cur  <=>  j ∈ succ_b(q)
    PairRelation out = cur;
    sweep( exec, cur, a.pre, b.succ_matrix, allowed, out,
           []( std::uint64_t old, std::uint64_t add ) { return old | add; } );
    return out;
}

PairRelation prune_step( const PairRelation& cur, const Graph& a, const Graph& b, bool forward, Exec exec )
{
    PairRelation out( cur.states() );
    auto keep = []( std::uint64_t, std::uint64_t v ) { return v; };
    if( forward )
        sweep( exec, cur, a.succ, b.pre_matrix, cur, out, keep );
    else
        sweep( exec, cur, a.pre, b.succ_matrix, cur, out, keep );
    return out;
}

} // namespace kernels

} // namespace fsmdiag
