#include "fsmdiag/diagnoser.hpp"

#include <algorithm>
#include <string>

#include "fsmdiag/errors.hpp"

namespace fsmdiag
{

Diagnoser::Diagnoser( Fsm m, const DiagVerdict& verdict ) : _m{ std::move( m ) }
{
    switch( verdict.property )
    {
    case PropertyKind::parametric:
    case PropertyKind::diag:
    case PropertyKind::eventual:
    case PropertyKind::critical:
        break;
    default:
        throw usage_error( "the diagnoser needs a parametric, diag, eventual or critical verdict" );
    }
    if( !verdict.holds || !verdict.params )
        throw usage_error( "the diagnoser needs a property that holds" );
    _params = *verdict.params;
    _first_only = !_params.horizon_infinite;
}

std::optional<DiagnosisEvent> Diagnoser::step( std::string_view token )
{
    auto y = _m.find_symbol( token );
    if( !y )
        throw usage_error( "symbol '" + std::string( token ) + "' is not an output of the machine" );
    return step( *y );
}

std::optional<DiagnosisEvent> Diagnoser::step( SymbolIndex y )
{
    if( y < 0 || static_cast<std::size_t>( y ) >= _m.symbols().size() )
        throw usage_error( "symbol index out of range" );
    const auto n = _m.size();
    Slot s{ y, StateMask( n ), StateMask( n ) };
    if( _window.empty() && _k == 0 )
    {
        for( StateIndex i = 0; i < n; ++i )
            s.filter[ i ] = s.clean[ i ] = _m.is_initial( i ) && _m.label( i ) == y;
    }
    else
    {
        const auto& last = _window.back();
        for( StateIndex i = 0; i < n; ++i )
        {
            if( !last.filter[ i ] )
                continue;
            for( auto j : _m.successors( i ) )
                if( _m.label( j ) == y )
                {
                    s.filter[ j ] = true;
                    if( last.clean[ i ] && !_m.is_critical( i ) )
                        s.clean[ j ] = true;
                }
        }
    }
    if( std::none_of( s.filter.begin(), s.filter.end(), []( bool b ) { return b; } ) )
        throw inconsistent_observation( "no execution produces the observed symbols up to step "
                                        + std::to_string( _k + 1 ) );
    ++_k;
    _window.push_back( std::move( s ) );
    if( _window.size() > _params.delta + 1 )
        _window.pop_front();

    // smooth back to the oldest kept step
    StateMask back( n );
    for( StateIndex i = 0; i < n; ++i )
        back[ i ] = _m.label( i ) == _window.back().y;
    for( auto t = _window.size() - 1; t-- > 0; )
    {
        StateMask prev( n );
        for( StateIndex i = 0; i < n; ++i )
        {
            if( _m.label( i ) != _window[ t ].y )
                continue;
            for( auto j : _m.successors( i ) )
                if( back[ j ] )
                {
                    prev[ i ] = true;
                    break;
                }
        }
        back = std::move( prev );
    }
    const auto& oldest = _window.front();
    _estimate.assign( n, false );
    bool in_omega = false, all_omega = true, clean_hit = false;
    for( StateIndex i = 0; i < n; ++i )
    {
        if( !( oldest.filter[ i ] && back[ i ] ) )
            continue;
        _estimate[ i ] = true;
        in_omega = in_omega || _m.is_critical( i );
        all_omega = all_omega && _m.is_critical( i );
        clean_hit = clean_hit || ( oldest.clean[ i ] && _m.is_critical( i ) );
    }
    if( _k <= _params.delta )
        return std::nullopt;
    const auto at = _k - _params.delta;
    if( at < _params.tau + 1 || !( _first_only ? clean_hit : in_omega ) )
        return std::nullopt;
    DiagnosisEvent e;
    e.detected_at = _k;
    e.exact = all_omega;
    if( e.exact )
        e.lo = e.hi = at;
    else
    {
        e.lo = at > _params.gamma1 ? at - _params.gamma1 : 1;
        e.hi = at + _params.gamma2;
    }
    if( !_events.empty() && _events.back().lo <= e.lo && e.hi <= _events.back().hi )
        return std::nullopt;
    _events.push_back( e );
    return e;
}

} // namespace fsmdiag
