#include "fsmdiag/checker.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <tuple>

#include "fsmdiag/errors.hpp"

namespace fsmdiag
{

namespace
{

constexpr std::array<std::pair<PropertyKind, std::string_view>, 8> property_names{ {
        { PropertyKind::parametric, "parametric" },
        { PropertyKind::diag, "diag" },
        { PropertyKind::eventual, "eventual" },
        { PropertyKind::critical, "critical" },
        { PropertyKind::eventual_obs, "eventual-obs" },
        { PropertyKind::critical_obs, "critical-obs" },
        { PropertyKind::initial_obs, "initial-obs" },
        { PropertyKind::exact_step, "exact-step" },
} };

} // namespace

std::string_view to_string( PropertyKind p )
{
    for( auto [ k, name ] : property_names )
        if( k == p )
            return name;
    return "unknown";
}

PropertyKind parse_property( std::string_view name )
{
    for( auto [ k, n ] : property_names )
        if( n == name )
            return k;
    throw usage_error( "unknown property '" + std::string( name ) + "'" );
}

const std::vector<PropertyKind>& all_properties()
{
    static const std::vector<PropertyKind> all = [] {
        std::vector<PropertyKind> v;
        for( auto [ k, n ] : property_names )
            v.push_back( k );
        return v;
    }();
    return all;
}

Analysis::Analysis( Fsm m, Exec exec ) : _m{ std::move( m ) }
{
    auto report = validate( _m, ValidationMode::analysis );
    if( !report.ok() )
    {
        std::string what = "machine is not valid for analysis:";
        for( const auto& v : report.violations )
            what += " [" + v.message + "]";
        throw precondition_error( what );
    }
    _pi = compute_pi( _m );
    _mixed = mixed_pairs( _m.critical() );
    _s = s_series( _m, exec );
    _s_tilde = s_restricted_series( _m, exec );
    _f = f_series( _m, exec );
    _b = b_series( _m, _s.fixed_point(), exec );
    _b_tilde = b_series( _m, _s_tilde.fixed_point(), exec );
    _lambda = lambda_series( _m, _s.fixed_point(), exec );
    _gamma = gamma_series( _m, _s.fixed_point(), exec );
    _s_asym = asymmetric_s_series( _m, exec );
    _gamma_asym = asymmetric_gamma_series( _m, _s_asym.fixed_point(), exec );
}

bool horizon_infinite( PropertyKind p )
{
    switch( p )
    {
    case PropertyKind::parametric:
    case PropertyKind::diag:
    case PropertyKind::initial_obs:
        return false;
    default:
        return true;
    }
}

DiagParams force_params( PropertyKind p, DiagParams params )
{
    params.horizon_infinite = horizon_infinite( p );
    switch( p )
    {
    case PropertyKind::parametric:
    case PropertyKind::eventual:
        break;
    case PropertyKind::diag:
    case PropertyKind::critical:
        params.tau = 0;
        break;
    case PropertyKind::eventual_obs:
        params.delta = params.gamma1 = params.gamma2 = 0;
        break;
    case PropertyKind::critical_obs:
        params.tau = params.delta = params.gamma1 = params.gamma2 = 0;
        break;
    case PropertyKind::exact_step:
        params.gamma1 = params.gamma2 = 0;
        break;
    case PropertyKind::initial_obs:
        params.tau = params.gamma1 = params.gamma2 = 0;
        break;
    }
    return params;
}

DiagParams params_for( PropertyKind p, const FrontierTuple& t )
{
    DiagParams d;
    d.horizon_infinite = horizon_infinite( p );
    switch( p )
    {
    case PropertyKind::parametric:
        // b and g carry the same backward length here
        d.tau = t.g - 1;
        d.delta = t.l - 1;
        d.gamma1 = t.g - 1;
        d.gamma2 = t.l - 1;
        break;
    case PropertyKind::diag:
        d.delta = std::max( t.f, t.l ) - 1;
        d.gamma1 = d.gamma2 = t.l - 1;
        break;
    case PropertyKind::eventual:
    case PropertyKind::critical:
    case PropertyKind::exact_step:
    case PropertyKind::eventual_obs:
    case PropertyKind::critical_obs:
    case PropertyKind::initial_obs:
        d.tau = std::max( t.b, t.g ) - 1;
        d.delta = std::max( t.f, t.l ) - 1;
        d.gamma1 = t.g - 1;
        d.gamma2 = t.l - 1;
        break;
    }
    return d;
}

namespace
{

using Box = std::array<std::size_t, 4>;
using Ok = std::function<bool( const Box& )>;

// Pareto minimal points of a monotone predicate over [1,hi0]x...x[1,hi3].
std::vector<FrontierTuple> minimal_points( const Box& hi, const Ok& ok )
{
    // For every (b,f,g) the least l that satisfies the predicate.
    std::map<std::array<std::size_t, 3>, std::size_t> least_l;
    const std::size_t none = hi[ 3 ] + 1;
    for( std::size_t b = 1; b <= hi[ 0 ]; ++b )
        for( std::size_t f = 1; f <= hi[ 1 ]; ++f )
            for( std::size_t g = 1; g <= hi[ 2 ]; ++g )
            {
                std::size_t found = none;
                for( std::size_t l = 1; l <= hi[ 3 ]; ++l )
                    if( ok( { b, f, g, l } ) )
                    {
                        found = l;
                        break;
                    }
                least_l[ { b, f, g } ] = found;
            }
    std::vector<FrontierTuple> out;
    for( const auto& [ key, l ] : least_l )
    {
        if( l == none )
            continue;
        bool minimal = true;
        for( std::size_t d = 0; d < 3 && minimal; ++d )
        {
            if( key[ d ] == 1 )
                continue;
            auto lower = key;
            --lower[ d ];
            minimal = least_l.at( lower ) > l;
        }
        if( minimal )
            out.push_back( { key[ 0 ], key[ 1 ], key[ 2 ], l } );
    }
    return out;
}

bool better( const DiagParams& a, const DiagParams& b )
{
    return std::make_tuple( a.tau, a.delta, a.gamma1 + a.gamma2, a.gamma1 )
         < std::make_tuple( b.tau, b.delta, b.gamma1 + b.gamma2, b.gamma1 );
}

std::optional<Pair> smallest( const PairRelation& r )
{
    auto p = r.pairs();
    if( p.empty() )
        return std::nullopt;
    return p.front();
}

PairRelation initial_square( const Fsm& m ) { return PairRelation::product( m.initial(), m.initial() ); }

void require_initial_contains_critical( const Fsm& m )
{
    for( StateIndex i = 0; i < m.size(); ++i )
        if( m.is_critical( i ) && !m.is_initial( i ) )
            throw usage_error( "initial state observability needs the critical set inside the initial set; '"
                               + m.name( i ) + "' is critical but not initial" );
}

// The violated intersection at the fixed points, with its display name.
std::pair<PairRelation, std::string> violation_set( const Analysis& a, PropertyKind p )
{
    const auto& m = a.machine();
    switch( p )
    {
    case PropertyKind::parametric:
        return { a.gamma_asym().mixed.fixed_point() & a.lambda().mixed.fixed_point(), "Gamma_restricted* ∩ Lambda*" };
    case PropertyKind::diag:
        return { a.s_tilde().fixed_point() & a.lambda().mixed.fixed_point(), "Stilde* ∩ Lambda*" };
    case PropertyKind::eventual:
        return { a.gamma().mixed.fixed_point() & a.lambda().mixed.fixed_point(), "Gamma* ∩ Lambda*" };
    case PropertyKind::critical:
    {
        auto d = violation_set( a, PropertyKind::diag );
        if( !d.first.empty() )
            return d;
        return violation_set( a, PropertyKind::eventual );
    }
    case PropertyKind::eventual_obs:
        return { a.b().fixed_point() & a.mixed(), "B* ∩ mixed" };
    case PropertyKind::critical_obs:
        return { a.s().fixed_point() & a.mixed(), "S* ∩ mixed" };
    case PropertyKind::exact_step:
        return { a.b().fixed_point() & a.f().fixed_point() & a.mixed(), "B* ∩ F* ∩ mixed" };
    case PropertyKind::initial_obs:
        return { initial_square( m ) & a.f().fixed_point() & a.mixed(), "(X0×X0) ∩ F* ∩ mixed" };
    }
    return {};
}

std::vector<FrontierTuple> frontier_unchecked( const Analysis& a, PropertyKind p )
{
    const auto& m = a.machine();
    const auto bs = a.b().convergence_step;
    const auto fs = a.f().convergence_step;
    const auto gs = a.gamma().mixed.convergence_step;
    const auto ls = a.lambda().mixed.convergence_step;
    switch( p )
    {
    case PropertyKind::parametric:
    {
        const auto ga = a.gamma_asym().mixed.convergence_step;
        auto pts = minimal_points( { 1, 1, ga, ls }, [ & ]( const Box& t ) {
            return !a.gamma_asym().mixed.at( t[ 2 ] ).intersects( a.lambda().mixed.at( t[ 3 ] ) );
        } );
        for( auto& t : pts )
            t.b = t.g;
        return pts;
    }
    case PropertyKind::diag:
        return minimal_points( { 1, fs, 1, ls }, [ & ]( const Box& t ) {
            return !( a.s_tilde().fixed_point() & a.f().at( t[ 1 ] ) ).intersects( a.lambda().mixed.at( t[ 3 ] ) );
        } );
    case PropertyKind::eventual:
    case PropertyKind::critical:
        return minimal_points( { bs, fs, gs, ls }, [ & ]( const Box& t ) {
            return !( a.b().at( t[ 0 ] ) & a.f().at( t[ 1 ] ) & a.gamma().mixed.at( t[ 2 ] ) )
                            .intersects( a.lambda().mixed.at( t[ 3 ] ) );
        } );
    case PropertyKind::exact_step:
        return minimal_points( { bs, fs, 1, 1 }, [ & ]( const Box& t ) {
            return !( a.b().at( t[ 0 ] ) & a.f().at( t[ 1 ] ) ).intersects( a.mixed() );
        } );
    case PropertyKind::eventual_obs:
        return minimal_points( { bs, 1, 1, 1 },
                               [ & ]( const Box& t ) { return !a.b().at( t[ 0 ] ).intersects( a.mixed() ); } );
    case PropertyKind::critical_obs:
        return minimal_points( { 1, 1, 1, 1 },
                               [ & ]( const Box& ) { return !a.s().fixed_point().intersects( a.mixed() ); } );
    case PropertyKind::initial_obs:
    {
        const auto sq = initial_square( m );
        return minimal_points( { 1, fs, 1, 1 },
                               [ & ]( const Box& t ) { return !( sq & a.f().at( t[ 1 ] ) ).intersects( a.mixed() ); } );
    }
    }
    return {};
}

void pick_best( PropertyKind p, DiagVerdict& v )
{
    for( const auto& t : v.frontier )
    {
        auto d = params_for( p, t );
        if( !v.params || better( d, *v.params ) )
        {
            v.params = d;
            v.chosen = t;
        }
    }
}

} // namespace

std::vector<FrontierTuple> parameter_frontier( const Analysis& a, PropertyKind p )
{
    if( p == PropertyKind::initial_obs )
        require_initial_contains_critical( a.machine() );
    if( !violation_set( a, p ).first.empty() )
        throw usage_error( "property " + std::string( to_string( p ) ) + " fails; no parameter frontier" );
    return frontier_unchecked( a, p );
}

DiagVerdict check( const Analysis& a, PropertyKind p )
{
    if( p == PropertyKind::initial_obs )
        require_initial_contains_critical( a.machine() );
    DiagVerdict v;
    v.property = p;
    auto [ bad, name ] = violation_set( a, p );
    v.holds = bad.empty();
    if( !v.holds )
    {
        v.witness = Witness{ *smallest( bad ), name };
        return v;
    }
    if( p == PropertyKind::critical )
    {
        auto ev = check( a, PropertyKind::eventual );
        auto dg = check( a, PropertyKind::diag );
        v.frontier = ev.frontier;
        v.chosen = ev.chosen;
        const auto& e = *ev.params;
        const auto& d = *dg.params;
        DiagParams c;
        c.horizon_infinite = true;
        c.tau = 0;
        c.delta = std::max( { e.tau, e.delta, d.delta } );
        c.gamma1 = std::max( e.tau, e.gamma1 );
        c.gamma2 = c.delta;
        v.params = c;
        return v;
    }
    v.frontier = frontier_unchecked( a, p );
    pick_best( p, v );
    if( p == PropertyKind::parametric )
    {
        // T = 0 is implied by both the eventual and the one-shot guarantees
        for( auto other : { PropertyKind::eventual, PropertyKind::diag } )
        {
            auto o = check( a, other );
            if( !o.holds )
                continue;
            auto d = *o.params;
            d.horizon_infinite = false;
            if( better( d, *v.params ) )
            {
                v.params = d;
                v.chosen = o.chosen;
            }
        }
    }
    return v;
}

DiagVerdict check_parametric( const Fsm& m ) { return check( Analysis( m ), PropertyKind::parametric ); }
DiagVerdict check_diag( const Fsm& m ) { return check( Analysis( m ), PropertyKind::diag ); }
DiagVerdict check_eventual( const Fsm& m ) { return check( Analysis( m ), PropertyKind::eventual ); }
DiagVerdict check_critical( const Fsm& m ) { return check( Analysis( m ), PropertyKind::critical ); }
DiagVerdict check_eventual_obs( const Fsm& m ) { return check( Analysis( m ), PropertyKind::eventual_obs ); }
DiagVerdict check_exact_step( const Fsm& m ) { return check( Analysis( m ), PropertyKind::exact_step ); }
DiagVerdict check_initial_obs( const Fsm& m ) { return check( Analysis( m ), PropertyKind::initial_obs ); }
DiagVerdict check_critical_obs( const Fsm& m ) { return check( Analysis( m ), PropertyKind::critical_obs ); }

} // namespace fsmdiag
