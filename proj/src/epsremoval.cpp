#include "fsmdiag/epsremoval.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <tuple>

#include "fsmdiag/errors.hpp"

namespace fsmdiag
{

namespace
{

bool has_silent_successor( const Fsm& m, StateIndex i )
{
    for( auto j : m.successors( i ) )
        if( m.is_silent( j ) )
            return true;
    return false;
}

bool has_visible_successor( const Fsm& m, StateIndex i )
{
    for( auto j : m.successors( i ) )
        if( !m.is_silent( j ) )
            return true;
    return false;
}

void require_no_silent_cycle( const Fsm& m )
{
    if( validate( m, ValidationMode::desilent ).has( ViolationKind::silent_cycle ) )
        throw precondition_error( "machine has a cycle of silent states" );
}

// Longest silent path ending at each state, in states; 0 for visible states.
std::vector<std::size_t> silent_depth( const Fsm& m )
{
    const auto n = m.size();
    std::vector<std::size_t> depth( n, 0 );
    std::vector<bool> done( n, false );
    std::function<std::size_t( StateIndex )> visit = [ & ]( StateIndex i ) -> std::size_t {
        if( !m.is_silent( i ) )
            return 0;
        if( done[ i ] )
            return depth[ i ];
        std::size_t best = 0;
        for( auto p : m.predecessors( i ) )
            best = std::max( best, visit( p ) );
        done[ i ] = true;
        return depth[ i ] = best + 1;
    };
    for( StateIndex i = 0; i < n; ++i )
        visit( i );
    return depth;
}

// Silent executions from w to q of exactly g states: the states at each
// position, positions 1..g.
std::vector<StateMask> positions( const Fsm& m, StateIndex q, StateIndex w, std::size_t g )
{
    const auto n = m.size();
    // back[t]: states from which q is reached in t further silent steps
    std::vector<StateMask> back( g, StateMask( n ) );
    back[ 0 ][ q ] = true;
    for( std::size_t t = 1; t < g; ++t )
        for( StateIndex z = 0; z < n; ++z )
            if( back[ t - 1 ][ z ] && m.is_silent( z ) )
                for( auto p : m.predecessors( z ) )
                    back[ t ][ p ] = true;
    std::vector<StateMask> v( g, StateMask( n ) );
    if( !back[ g - 1 ][ w ] )
        return v;
    v[ 0 ][ w ] = true;
    for( std::size_t k = 1; k < g; ++k )
        for( StateIndex z = 0; z < n; ++z )
            if( v[ k - 1 ][ z ] )
                for( auto s : m.successors( z ) )
                    if( m.is_silent( s ) && back[ g - 1 - k ][ s ] )
                        v[ k ][ s ] = true;
    return v;
}

bool reach_avoiding( const Fsm& m, StateIndex q, StateIndex w, std::size_t lambda )
{
    if( m.is_critical( q ) || m.is_critical( w ) )
        return false;
    StateMask c( m.size() );
    c[ q ] = true;
    for( std::size_t k = 0; k < lambda && !c[ w ]; ++k )
    {
        StateMask next( m.size() );
        for( StateIndex z = 0; z < m.size(); ++z )
            if( c[ z ] && m.is_silent( z ) && !m.is_critical( z ) )
                for( auto p : m.predecessors( z ) )
                    next[ p ] = true;
        c = std::move( next );
    }
    return c[ w ];
}

bool reach_crossing( const Fsm& m, StateIndex q, StateIndex w, std::size_t lambda )
{
    // executions have between 2 and λ+1 states
    for( std::size_t g = 2; g <= lambda + 1; ++g )
        for( const auto& at : positions( m, q, w, g ) )
            for( StateIndex z = 0; z < m.size(); ++z )
                if( at[ z ] && m.is_critical( z ) )
                    return true;
    return false;
}

// Splits silent states with both kinds of successors.
Fsm split_mixed( const Fsm& m )
{
    const auto n = m.size();
    std::vector<bool> mixed( n, false );
    bool any = false;
    for( StateIndex i = 0; i < n; ++i )
    {
        mixed[ i ] = m.is_silent( i ) && has_silent_successor( m, i ) && has_visible_successor( m, i );
        any = any || mixed[ i ];
    }
    if( !any )
        return m;
    // new index of each copy: plain states keep one slot, mixed states two
    std::vector<StateIndex> silent_copy( n ), visible_copy( n );
    std::vector<std::string> names;
    std::vector<SymbolIndex> labels;
    StateMask initial, critical;
    for( StateIndex i = 0; i < n; ++i )
    {
        auto push = [ & ]( std::string name ) {
            names.push_back( std::move( name ) );
            labels.push_back( m.label( i ) );
            initial.push_back( m.is_initial( i ) );
            critical.push_back( m.is_critical( i ) );
            return static_cast<StateIndex>( names.size() - 1 );
        };
        if( mixed[ i ] )
        {
            silent_copy[ i ] = push( m.name( i ) + ".s" );
            visible_copy[ i ] = push( m.name( i ) + ".n" );
        }
        else
            silent_copy[ i ] = visible_copy[ i ] = push( m.name( i ) );
    }
    std::vector<Transition> trans;
    for( auto [ i, j ] : m.transitions() )
    {
        const auto from = m.is_silent( j ) ? silent_copy[ i ] : visible_copy[ i ];
        trans.emplace_back( from, silent_copy[ j ] );
        if( visible_copy[ j ] != silent_copy[ j ] )
            trans.emplace_back( from, visible_copy[ j ] );
    }
    return Fsm( std::move( names ), m.symbols(), std::move( labels ), std::move( trans ), std::move( initial ),
                std::move( critical ) );
}

std::string new_name( const Fsm& m, StateIndex q, StateIndex w, bool crossed )
{
    return m.name( q ) + "@" + m.name( w ) + ( crossed ? "!" : "" );
}

} // namespace

SilentContext silent_context( const Fsm& m )
{
    require_no_silent_cycle( m );
    SilentContext c;
    const auto n = m.size();
    c.silent.resize( n );
    c.first.resize( n );
    c.last.resize( n );
    for( StateIndex i = 0; i < n; ++i )
    {
        c.silent[ i ] = m.is_silent( i );
        c.first[ i ] = !m.is_silent( i ) && has_silent_successor( m, i );
        c.last[ i ] = m.is_silent( i ) && !has_silent_successor( m, i );
    }
    c.lambda = max_silent_length( m );
    return c;
}

std::size_t max_silent_length( const Fsm& m )
{
    require_no_silent_cycle( m );
    auto depth = silent_depth( m );
    return depth.empty() ? 0 : *std::max_element( depth.begin(), depth.end() );
}

bool silent_reach_avoiding( const Fsm& m, StateIndex q, StateIndex w )
{
    if( q >= m.size() || w >= m.size() )
        throw usage_error( "state index out of range" );
    if( !m.is_silent( q ) || m.is_critical( q ) )
        throw usage_error( "'" + m.name( q ) + "' must be silent and outside the critical set" );
    if( m.is_silent( w ) || m.is_critical( w ) )
        throw usage_error( "'" + m.name( w ) + "' must be visible and outside the critical set" );
    return reach_avoiding( m, q, w, max_silent_length( m ) );
}

bool silent_reach_crossing( const Fsm& m, StateIndex q, StateIndex w )
{
    if( q >= m.size() || w >= m.size() )
        throw usage_error( "state index out of range" );
    if( !m.is_silent( q ) )
        throw usage_error( "'" + m.name( q ) + "' must be silent" );
    if( m.is_silent( w ) )
        throw usage_error( "'" + m.name( w ) + "' must be visible" );
    return reach_crossing( m, q, w, max_silent_length( m ) );
}

SilentRemovalResult desilent( const Fsm& input )
{
    auto report = validate( input, ValidationMode::desilent );
    for( auto kind : { ViolationKind::silent_cycle, ViolationKind::silent_initial, ViolationKind::not_live } )
        if( report.has( kind ) )
            throw precondition_error( "cannot remove silent states: " + std::string( to_string( kind ) ) );

    SilentRemovalResult r;
    r.split = split_mixed( input );
    const Fsm& m = r.split;
    const auto ctx = silent_context( m );
    const auto n = m.size();

    struct Node
    {
        std::string name;
        SymbolIndex label;
        bool initial;
        bool critical;
        StateIndex q = 0, w = 0; // for added states
        bool added = false;
        bool crossed = false;
    };
    std::vector<Node> nodes;
    std::vector<std::int64_t> visible_slot( n, -1 );
    for( StateIndex i = 0; i < n; ++i )
        if( !m.is_silent( i ) )
        {
            visible_slot[ i ] = static_cast<std::int64_t>( nodes.size() );
            nodes.push_back( { m.name( i ), m.label( i ), m.is_initial( i ), m.is_critical( i ) } );
        }
    // added states grouped by their w component
    std::vector<std::vector<std::size_t>> added_by_w( n );
    for( StateIndex q = 0; q < n; ++q )
    {
        if( !ctx.last[ q ] )
            continue;
        for( StateIndex w = 0; w < n; ++w )
        {
            if( !ctx.first[ w ] )
                continue;
            const bool keep[ 2 ] = { reach_avoiding( m, q, w, ctx.lambda ), reach_crossing( m, q, w, ctx.lambda ) };
            for( int flag = 0; flag < 2; ++flag )
            {
                if( !keep[ flag ] )
                    continue;
                added_by_w[ w ].push_back( nodes.size() );
                Node node{ new_name( m, q, w, flag == 1 ), m.label( w ), m.is_initial( w ), flag == 1 };
                node.q = q;
                node.w = w;
                node.added = true;
                node.crossed = flag == 1;
                nodes.push_back( std::move( node ) );
            }
        }
    }

    const auto total = nodes.size();
    std::vector<std::vector<std::size_t>> succ( total );
    for( auto [ i, j ] : m.transitions() )
    {
        if( m.is_silent( i ) || m.is_silent( j ) )
            continue;
        succ[ visible_slot[ i ] ].push_back( visible_slot[ j ] );
    }
    for( std::size_t a = 0; a < total; ++a )
    {
        const auto& node = nodes[ a ];
        if( !node.added )
            continue;
        for( auto j : m.successors( node.q ) )
        {
            succ[ a ].push_back( visible_slot[ j ] );
            for( auto b : added_by_w[ j ] )
                succ[ a ].push_back( b );
        }
        for( auto p : m.predecessors( node.w ) )
            if( !m.is_silent( p ) )
                succ[ visible_slot[ p ] ].push_back( a );
    }

    // drop sinks until none is left
    std::vector<bool> alive( total, true );
    for( bool changed = true; changed; )
    {
        changed = false;
        for( std::size_t a = 0; a < total; ++a )
        {
            if( !alive[ a ] )
                continue;
            bool any = std::any_of( succ[ a ].begin(), succ[ a ].end(), [ & ]( std::size_t b ) { return alive[ b ]; } );
            if( !any )
            {
                alive[ a ] = false;
                changed = true;
            }
        }
    }

    std::vector<StateIndex> index( total );
    std::vector<std::string> names;
    std::vector<SymbolIndex> labels;
    StateMask initial, critical;
    for( std::size_t a = 0; a < total; ++a )
    {
        if( !alive[ a ] )
            continue;
        index[ a ] = static_cast<StateIndex>( names.size() );
        names.push_back( nodes[ a ].name );
        labels.push_back( nodes[ a ].label );
        initial.push_back( nodes[ a ].initial );
        critical.push_back( nodes[ a ].critical );
        if( nodes[ a ].added )
            r.provenance[ nodes[ a ].name ]
                    = SilentOrigin{ m.name( nodes[ a ].q ), m.name( nodes[ a ].w ), nodes[ a ].crossed };
    }
    std::vector<Transition> trans;
    for( std::size_t a = 0; a < total; ++a )
        for( auto b : succ[ a ] )
            if( alive[ a ] && alive[ b ] )
                trans.emplace_back( index[ a ], index[ b ] );
    r.m_hat = Fsm( std::move( names ), m.symbols(), std::move( labels ), std::move( trans ), std::move( initial ),
                   std::move( critical ) );
    return r;
}

Execution collapse_execution( const Fsm& m, const SilentRemovalResult& r, const Execution& x )
{
    if( !is_execution( m, x ) )
        throw usage_error( "not an execution of the machine" );
    const auto& split = r.split;
    // name of each step in the split machine
    auto split_name = [ & ]( std::size_t k ) {
        const auto& name = m.name( x[ k ] );
        if( split.find( name ) )
            return name;
        const bool next_silent = k + 1 < x.size() && m.is_silent( x[ k + 1 ] );
        return name + ( next_silent ? ".s" : ".n" );
    };
    auto lookup = [ & ]( const std::string& name ) {
        auto i = r.m_hat.find( name );
        if( !i )
            throw usage_error( "state '" + name + "' has no image in the silent free machine" );
        return *i;
    };
    Execution out;
    std::size_t k = 0;
    while( k < x.size() )
    {
        if( m.is_silent( x[ k ] ) )
            throw usage_error( "execution starts with a silent state" );
        std::size_t end = k + 1;
        bool crossed = m.is_critical( x[ k ] );
        for( ; end < x.size() && m.is_silent( x[ end ] ); ++end )
            crossed = crossed || m.is_critical( x[ end ] );
        if( end == k + 1 && end == x.size() && !r.m_hat.find( m.name( x[ k ] ) ) )
        {
            // last state kept only through its copies; prefer one whose run avoids Ω
            std::optional<StateIndex> pick;
            for( const auto& [ name, origin ] : r.provenance )
                if( origin.w == m.name( x[ k ] ) && ( !pick || ( r.m_hat.is_critical( *pick ) && !origin.crossed ) ) )
                    pick = lookup( name );
            out.push_back( pick ? *pick : lookup( m.name( x[ k ] ) ) );
        }
        else if( end == k + 1 )
            out.push_back( lookup( m.name( x[ k ] ) ) );
        else
        {
            if( end == x.size() )
                throw usage_error( "execution ends inside a silent run" );
            out.push_back( lookup( split_name( end - 1 ) + "@" + m.name( x[ k ] ) + ( crossed ? "!" : "" ) ) );
        }
        k = end;
    }
    return out;
}

std::set<OutputString> projected_language( const Fsm& m, std::size_t max_length )
{
    std::set<OutputString> out;
    std::set<std::pair<OutputString, StateIndex>> seen;
    std::deque<std::pair<OutputString, StateIndex>> todo;
    for( auto i : m.initial_states() )
    {
        OutputString s;
        if( !m.is_silent( i ) )
            s.push_back( m.label( i ) );
        if( s.size() <= max_length && seen.emplace( s, i ).second )
            todo.emplace_back( s, i );
    }
    while( !todo.empty() )
    {
        auto [ s, i ] = todo.front();
        todo.pop_front();
        out.insert( s );
        for( auto j : m.successors( i ) )
        {
            auto t = s;
            if( !m.is_silent( j ) )
                t.push_back( m.label( j ) );
            if( t.size() <= max_length && seen.emplace( t, j ).second )
                todo.emplace_back( std::move( t ), j );
        }
    }
    return out;
}

} // namespace fsmdiag
