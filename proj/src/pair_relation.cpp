#include "fsmdiag/pair_relation.hpp"

#include <algorithm>
#include <bit>

namespace fsmdiag
{

PairRelation::PairRelation( std::size_t n ) : _n{ n }, _words{ ( n + 63 ) / 64 }, _bits( n * ( ( n + 63 ) / 64 ), 0 ) {}

PairRelation PairRelation::full( std::size_t n )
{
    PairRelation r( n );
    for( StateIndex i = 0; i < n; ++i )
        for( StateIndex j = 0; j < n; ++j )
            r.insert( i, j );
    return r;
}

PairRelation PairRelation::diagonal( std::size_t n )
{
    PairRelation r( n );
    for( StateIndex i = 0; i < n; ++i )
        r.insert( i, i );
    return r;
}

PairRelation PairRelation::product( const StateMask& a, const StateMask& b )
{
    PairRelation r( a.size() );
    for( StateIndex i = 0; i < a.size(); ++i )
    {
        if( !a[ i ] )
            continue;
        for( StateIndex j = 0; j < b.size(); ++j )
            if( b[ j ] )
                r.insert( i, j );
    }
    return r;
}

PairRelation PairRelation::from_pairs( std::size_t n, std::span<const Pair> pairs )
{
    PairRelation r( n );
    for( auto [ i, j ] : pairs )
        r.insert( i, j );
    return r;
}

std::size_t PairRelation::count() const
{
    std::size_t c = 0;
    for( auto w : _bits )
        c += static_cast<std::size_t>( std::popcount( w ) );
    return c;
}

bool PairRelation::empty() const
{
    return std::all_of( _bits.begin(), _bits.end(), []( std::uint64_t w ) { return w == 0; } );
}

bool PairRelation::is_symmetric() const { return *this == transpose(); }

bool PairRelation::is_subset_of( const PairRelation& other ) const
{
    for( std::size_t k = 0; k < _bits.size(); ++k )
        if( _bits[ k ] & ~other._bits[ k ] )
            return false;
    return true;
}

bool PairRelation::intersects( const PairRelation& other ) const
{
    for( std::size_t k = 0; k < _bits.size(); ++k )
        if( _bits[ k ] & other._bits[ k ] )
            return true;
    return false;
}

PairRelation PairRelation::transpose() const
{
    PairRelation r( _n );
    for( StateIndex i = 0; i < _n; ++i )
        for( StateIndex j : row_members( i ) )
            r.insert( j, i );
    return r;
}

PairRelation PairRelation::symmetric_closure() const { return *this | transpose(); }

PairRelation PairRelation::complement() const
{
    PairRelation r( _n );
    for( std::size_t k = 0; k < _bits.size(); ++k )
        r._bits[ k ] = ~_bits[ k ];
    // clear the padding bits
    if( _n % 64 != 0 )
    {
        const std::uint64_t keep = ( std::uint64_t{ 1 } << ( _n % 64 ) ) - 1;
        for( StateIndex i = 0; i < _n; ++i )
            r._bits[ i * _words + _words - 1 ] &= keep;
    }
    return r;
}

PairRelation& PairRelation::operator&=( const PairRelation& other )
{
    for( std::size_t k = 0; k < _bits.size(); ++k )
        _bits[ k ] &= other._bits[ k ];
    return *this;
}

PairRelation& PairRelation::operator|=( const PairRelation& other )
{
    for( std::size_t k = 0; k < _bits.size(); ++k )
        _bits[ k ] |= other._bits[ k ];
    return *this;
}

PairRelation& PairRelation::operator-=( const PairRelation& other )
{
    for( std::size_t k = 0; k < _bits.size(); ++k )
        _bits[ k ] &= ~other._bits[ k ];
    return *this;
}

std::vector<Pair> PairRelation::pairs() const
{
    std::vector<Pair> out;
    for( StateIndex i = 0; i < _n; ++i )
        for( StateIndex j : row_members( i ) )
            out.emplace_back( i, j );
    return out;
}

std::vector<StateIndex> PairRelation::row_members( StateIndex i ) const
{
    std::vector<StateIndex> out;
    auto r = row( i );
    for( std::size_t w = 0; w < r.size(); ++w )
    {
        auto bits = r[ w ];
        while( bits )
        {
            out.push_back( static_cast<StateIndex>( w * 64 + std::countr_zero( bits ) ) );
            bits &= bits - 1;
        }
    }
    return out;
}

PairRelation equal_output_pairs( const Fsm& m )
{
    PairRelation r( m.size() );
    for( StateIndex i = 0; i < m.size(); ++i )
        for( StateIndex j = 0; j < m.size(); ++j )
            if( m.label( i ) == m.label( j ) )
                r.insert( i, j );
    return r;
}

PairRelation mixed_pairs( const StateMask& critical )
{
    StateMask safe( critical.size() );
    for( std::size_t i = 0; i < critical.size(); ++i )
        safe[ i ] = !critical[ i ];
    return PairRelation::product( critical, safe ).symmetric_closure();
}

PairRelation adjacency( const Fsm& m )
{
    PairRelation r( m.size() );
    for( auto [ i, j ] : m.transitions() )
        r.insert( i, j );
    return r;
}

std::string format_pairs( const Fsm& m, const PairRelation& r )
{
    std::string out = "{";
    bool first = true;
    for( auto [ i, j ] : r.pairs() )
    {
        if( !first )
            out += ",";
        first = false;
        out += "(" + m.name( i ) + "," + m.name( j ) + ")";
    }
    return out + "}";
}

CompactPairs compact( const PairRelation& r )
{
    CompactPairs c;
    for( auto [ i, j ] : r.pairs() )
    {
        if( i == j )
            c.diagonal.push_back( i );
        else if( r.contains( j, i ) )
        {
            if( i < j )
                c.off_diagonal.emplace_back( i, j );
        }
        else
            c.one_sided.emplace_back( i, j );
    }
    return c;
}

} // namespace fsmdiag
