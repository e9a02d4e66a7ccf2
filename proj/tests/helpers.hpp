#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>

#include "fsmdiag/fsm.hpp"
#include "fsmdiag/fsm_io.hpp"
#include "fsmdiag/pair_relation.hpp"

namespace testing
{

inline fsmdiag::Fsm fixture( const std::string& name )
{
    return fsmdiag::load_fsm( std::string( FIXTURE_DIR ) + "/" + name );
}

// Symmetric closure of the named pairs, plus the full diagonal when asked.
inline fsmdiag::PairRelation sym( const fsmdiag::Fsm& m,
                                  std::initializer_list<std::pair<const char*, const char*>> list,
                                  bool diagonal = false )
{
    auto r = diagonal ? fsmdiag::PairRelation::diagonal( m.size() ) : fsmdiag::PairRelation( m.size() );
    for( auto [ a, b ] : list )
    {
        r.insert( m.index_of( a ), m.index_of( b ) );
        r.insert( m.index_of( b ), m.index_of( a ) );
    }
    return r;
}

inline fsmdiag::Execution path( const fsmdiag::Fsm& m, std::initializer_list<const char*> names )
{
    fsmdiag::Execution x;
    for( auto n : names )
        x.push_back( m.index_of( n ) );
    return x;
}

inline std::vector<std::string> names( const fsmdiag::Fsm& m, std::span<const fsmdiag::StateIndex> s )
{
    std::vector<std::string> out;
    for( auto i : s )
        out.push_back( m.name( i ) );
    return out;
}

inline fsmdiag::StateMask mask( const fsmdiag::Fsm& m, std::initializer_list<const char*> list )
{
    fsmdiag::StateMask r( m.size(), false );
    for( auto n : list )
        r[ m.index_of( n ) ] = true;
    return r;
}

} // namespace testing
