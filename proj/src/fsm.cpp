#include "fsmdiag/fsm.hpp"

#include <algorithm>
#include <functional>

#include "fsmdiag/errors.hpp"

namespace fsmdiag
{

Fsm::Fsm( std::vector<std::string> names, std::vector<std::string> symbols, std::vector<SymbolIndex> labels,
          std::vector<Transition> transitions, StateMask initial, StateMask critical )
        : _names{ std::move( names ) }
        , _symbols{ std::move( symbols ) }
        , _labels{ std::move( labels ) }
        , _initial{ std::move( initial ) }
        , _critical{ std::move( critical ) }
{
    const auto n = _names.size();
    if( _labels.size() != n || _initial.size() != n || _critical.size() != n )
        throw usage_error( "state attribute vectors have inconsistent sizes" );
    for( StateIndex i = 0; i < n; ++i )
    {
        if( _names[ i ].empty() )
            throw usage_error( "empty state name" );
        if( !_index.emplace( _names[ i ], i ).second )
            throw usage_error( "duplicate state '" + _names[ i ] + "'" );
        if( _labels[ i ] != silent_symbol
            && ( _labels[ i ] < 0 || static_cast<std::size_t>( _labels[ i ] ) >= _symbols.size() ) )
            throw usage_error( "label out of range for state '" + _names[ i ] + "'" );
    }
    for( auto [ a, b ] : transitions )
        if( a >= n || b >= n )
            throw usage_error( "transition references an unknown state" );
    std::sort( transitions.begin(), transitions.end() );
    transitions.erase( std::unique( transitions.begin(), transitions.end() ), transitions.end() );
    _transitions = std::move( transitions );
    _succ.assign( n, {} );
    _pre.assign( n, {} );
    for( auto [ a, b ] : _transitions )
    {
        _succ[ a ].push_back( b );
        _pre[ b ].push_back( a );
    }
    for( auto& p : _pre )
        std::sort( p.begin(), p.end() );
}

std::optional<StateIndex> Fsm::find( std::string_view name ) const
{
    auto it = _index.find( std::string( name ) );
    if( it == _index.end() )
        return std::nullopt;
    return it->second;
}

StateIndex Fsm::index_of( std::string_view name ) const
{
    if( auto i = find( name ) )
        return *i;
    throw usage_error( "unknown state '" + std::string( name ) + "'" );
}

std::optional<SymbolIndex> Fsm::find_symbol( std::string_view token ) const
{
    if( token == silent_token )
        return silent_symbol;
    auto it = std::find( _symbols.begin(), _symbols.end(), token );
    if( it == _symbols.end() )
        return std::nullopt;
    return static_cast<SymbolIndex>( it - _symbols.begin() );
}

std::string_view Fsm::symbol_name( SymbolIndex s ) const
{
    if( s == silent_symbol )
        return silent_token;
    return _symbols.at( static_cast<std::size_t>( s ) );
}

bool Fsm::has_transition( StateIndex from, StateIndex to ) const
{
    return std::binary_search( _succ[ from ].begin(), _succ[ from ].end(), to );
}

std::vector<StateIndex> Fsm::initial_states() const { return mask_to_states( _initial ); }
std::vector<StateIndex> Fsm::critical_states() const { return mask_to_states( _critical ); }

Fsm Fsm::with_initial( const StateMask& initial ) const
{
    return { _names, _symbols, _labels, _transitions, initial, _critical };
}

Fsm Fsm::with_critical( const StateMask& critical ) const
{
    return { _names, _symbols, _labels, _transitions, _initial, critical };
}

Fsm Fsm::with_transitions( std::vector<Transition> transitions ) const
{
    return { _names, _symbols, _labels, std::move( transitions ), _initial, _critical };
}

bool operator==( const Fsm& a, const Fsm& b )
{
    if( a._names != b._names || a._initial != b._initial || a._critical != b._critical
        || a._transitions != b._transitions )
        return false;
    for( StateIndex i = 0; i < a.size(); ++i )
        if( a.symbol_name( a.label( i ) ) != b.symbol_name( b.label( i ) ) )
            return false;
    return true;
}

bool ValidationReport::has( ViolationKind kind ) const
{
    return std::any_of( violations.begin(), violations.end(), [ kind ]( const Violation& v ) { return v.kind == kind; } );
}

std::string_view to_string( ViolationKind kind )
{
    switch( kind )
    {
    case ViolationKind::empty_initial:
        return "empty-initial";
    case ViolationKind::not_live:
        return "liveness";
    case ViolationKind::silent_label:
        return "silent-label";
    case ViolationKind::silent_cycle:
        return "silent-cycle";
    case ViolationKind::silent_initial:
        return "silent-initial";
    case ViolationKind::initial_has_pred:
        return "initial-has-predecessor";
    case ViolationKind::orphan_not_initial:
        return "orphan-not-initial";
    }
    return "unknown";
}

namespace
{

std::string join_names( const Fsm& m, const std::vector<StateIndex>& states )
{
    std::string out;
    for( auto s : states )
    {
        if( !out.empty() )
            out += " ";
        out += m.name( s );
    }
    return out;
}

// States on some cycle of the subgraph induced by silent states.
std::vector<StateIndex> silent_cycle_states( const Fsm& m )
{
    const auto n = m.size();
    // Kahn elimination on the silent subgraph; whatever survives lies on or
    // leads into a cycle, then keep only states that also reach a survivor.
    std::vector<std::size_t> indeg( n, 0 );
    for( auto [ a, b ] : m.transitions() )
        if( m.is_silent( a ) && m.is_silent( b ) )
            ++indeg[ b ];
    std::vector<bool> removed( n, false );
    std::vector<StateIndex> queue;
    for( StateIndex i = 0; i < n; ++i )
        if( !m.is_silent( i ) || indeg[ i ] == 0 )
            queue.push_back( i );
    while( !queue.empty() )
    {
        auto s = queue.back();
        queue.pop_back();
        if( removed[ s ] )
            continue;
        removed[ s ] = true;
        if( !m.is_silent( s ) )
            continue;
        for( auto t : m.successors( s ) )
            if( m.is_silent( t ) && --indeg[ t ] == 0 )
                queue.push_back( t );
    }
    // reverse pass: drop states with no silent successor among survivors
    bool changed = true;
    while( changed )
    {
        changed = false;
        for( StateIndex i = 0; i < n; ++i )
        {
            if( removed[ i ] )
                continue;
            bool keeps = false;
            for( auto t : m.successors( i ) )
                keeps = keeps || ( m.is_silent( t ) && !removed[ t ] );
            if( !keeps )
            {
                removed[ i ] = true;
                changed = true;
            }
        }
    }
    std::vector<StateIndex> out;
    for( StateIndex i = 0; i < n; ++i )
        if( !removed[ i ] )
            out.push_back( i );
    return out;
}

} // namespace

ValidationReport validate( const Fsm& m, ValidationMode mode )
{
    ValidationReport report;
    report.mode = mode;
    auto add = [ & ]( ViolationKind kind, std::vector<StateIndex> states, const std::string& what ) {
        if( states.empty() )
            return;
        std::string msg = what + ": " + join_names( m, states );
        report.violations.push_back( { kind, std::move( states ), std::move( msg ) } );
    };

    std::vector<StateIndex> dead, silent, silent_init, init_pred, orphan;
    for( StateIndex i = 0; i < m.size(); ++i )
    {
        if( m.successors( i ).empty() )
            dead.push_back( i );
        if( m.is_silent( i ) )
            silent.push_back( i );
        if( m.is_silent( i ) && m.is_initial( i ) )
            silent_init.push_back( i );
        if( m.is_initial( i ) && !m.predecessors( i ).empty() )
            init_pred.push_back( i );
        if( !m.is_initial( i ) && m.predecessors( i ).empty() )
            orphan.push_back( i );
    }

    add( ViolationKind::not_live, dead, "states without successors" );
    if( mode == ValidationMode::analysis )
    {
        if( m.initial_states().empty() )
            report.violations.push_back( { ViolationKind::empty_initial, {}, "the initial set is empty" } );
        add( ViolationKind::silent_label, silent, "states with the silent label" );
    }
    else
    {
        add( ViolationKind::silent_cycle, silent_cycle_states( m ), "states on a silent cycle" );
        add( ViolationKind::silent_initial, silent_init, "silent initial states" );
        add( ViolationKind::initial_has_pred, init_pred, "initial states with predecessors" );
        add( ViolationKind::orphan_not_initial, orphan, "non-initial states without predecessors" );
    }
    return report;
}

std::vector<StateIndex> succ( const Fsm& m, std::string_view state )
{
    auto s = m.successors( m.index_of( state ) );
    return { s.begin(), s.end() };
}

std::vector<StateIndex> pre( const Fsm& m, std::string_view state )
{
    auto s = m.predecessors( m.index_of( state ) );
    return { s.begin(), s.end() };
}

bool is_execution( const Fsm& m, std::span<const StateIndex> x )
{
    if( x.empty() )
        return false;
    for( auto s : x )
        if( s >= m.size() )
            return false;
    for( std::size_t k = 0; k + 1 < x.size(); ++k )
        if( !m.has_transition( x[ k ], x[ k + 1 ] ) )
            return false;
    return true;
}

OutputString output_of( const Fsm& m, std::span<const StateIndex> x )
{
    if( !is_execution( m, x ) )
        throw usage_error( "not an execution of the machine" );
    OutputString out;
    for( auto s : x )
        if( !m.is_silent( s ) )
            out.push_back( m.label( s ) );
    return out;
}

CrossingIndex crossing_index( std::span<const StateIndex> x, const StateMask& critical )
{
    for( std::size_t k = 0; k < x.size(); ++k )
        if( critical[ x[ k ] ] )
            return k + 1;
    return std::nullopt;
}

Fsm build_restricted( const Fsm& m )
{
    std::vector<Transition> kept;
    for( auto t : m.transitions() )
        if( !m.is_critical( t.first ) )
            kept.push_back( t );
    return m.with_transitions( std::move( kept ) );
}

std::vector<Execution> enumerate_executions( const Fsm& m, std::span<const StateIndex> from, std::size_t length,
                                             std::size_t budget )
{
    if( length == 0 )
        throw usage_error( "execution length must be at least 1" );
    // paths of each remaining length, counted before anything is materialised
    std::vector<double> paths( m.size(), 1.0 );
    for( std::size_t k = 1; k < length; ++k )
    {
        std::vector<double> next( m.size(), 0.0 );
        for( StateIndex i = 0; i < m.size(); ++i )
            for( auto j : m.successors( i ) )
                next[ i ] += paths[ j ];
        paths = std::move( next );
    }
    double total = 0;
    for( auto s : from )
        total += paths[ s ];
    if( total * static_cast<double>( length ) > static_cast<double>( budget ) )
        throw resource_error( "enumeration of executions of length " + std::to_string( length )
                              + " exceeds the budget of " + std::to_string( budget ) );
    std::vector<Execution> out;
    Execution cur;
    std::function<void( StateIndex )> walk = [ & ]( StateIndex s ) {
        cur.push_back( s );
        if( cur.size() == length )
            out.push_back( cur );
        else
            for( auto t : m.successors( s ) )
                walk( t );
        cur.pop_back();
    };
    for( auto s : from )
        walk( s );
    return out;
}

std::vector<StateIndex> mask_to_states( const StateMask& mask )
{
    std::vector<StateIndex> out;
    for( StateIndex i = 0; i < mask.size(); ++i )
        if( mask[ i ] )
            out.push_back( i );
    return out;
}

StateMask states_to_mask( std::size_t n, std::span<const StateIndex> states )
{
    StateMask mask( n, false );
    for( auto s : states )
        mask.at( s ) = true;
    return mask;
}

} // namespace fsmdiag
