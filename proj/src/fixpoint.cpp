#include "fsmdiag/fixpoint.hpp"

#include "fsmdiag/errors.hpp"

namespace fsmdiag
{

const PairRelation& FixpointSeries::at( std::size_t k ) const
{
    if( k == 0 )
        throw usage_error( "series index starts at 1" );
    return k <= steps.size() ? steps[ k - 1 ] : steps.back();
}

std::size_t first_index_of_limit( const std::vector<PairRelation>& list )
{
    for( std::size_t k = 0; k < list.size(); ++k )
        if( list[ k ] == list.back() )
            return k + 1;
    return list.size();
}

namespace
{

void finish( FixpointSeries& s )
{
    s.convergence_step = first_index_of_limit( s.steps );
    for( std::size_t k = 0; k < s.steps.size(); ++k )
        if( s.steps[ k ].empty() )
        {
            s.emptied_at = k + 1;
            break;
        }
}

FixpointSeries run_grow( PairRelation first, const PairRelation& allowed, const Graph& a, const Graph& b, Exec exec )
{
    FixpointSeries s;
    s.steps.push_back( std::move( first ) );
    while( !s.steps.back().empty() )
    {
        auto next = kernels::grow_step( s.steps.back(), a, b, allowed, exec );
        bool done = next == s.steps.back();
        s.steps.push_back( std::move( next ) );
        if( done )
            break;
    }
    finish( s );
    return s;
}

FixpointSeries run_prune( PairRelation first, const Graph& a, const Graph& b, bool forward, Exec exec )
{
    FixpointSeries s;
    s.steps.push_back( std::move( first ) );
    while( !s.steps.back().empty() )
    {
        auto next = kernels::prune_step( s.steps.back(), a, b, forward, exec );
        bool done = next == s.steps.back();
        s.steps.push_back( std::move( next ) );
        if( done )
            break;
    }
    finish( s );
    return s;
}

StateMask complement_mask( const StateMask& m )
{
    StateMask out( m.size() );
    for( std::size_t i = 0; i < m.size(); ++i )
        out[ i ] = !m[ i ];
    return out;
}

FixpointSeries mixed_view( const Fsm& m, const FixpointSeries& ordered, bool symmetric )
{
    const auto cross = PairRelation::product( m.critical(), complement_mask( m.critical() ) );
    FixpointSeries s;
    for( const auto& r : ordered.steps )
    {
        auto x = r & cross;
        s.steps.push_back( symmetric ? x.symmetric_closure() : x );
    }
    finish( s );
    return s;
}

} // namespace

PairRelation compute_pi( const Fsm& m ) { return equal_output_pairs( m ); }

PairRelation compute_theta( const Fsm& m ) { return PairRelation::diagonal( m.size() ); }

FixpointSeries s_series( const Fsm& m, Exec exec )
{
    const auto pi = compute_pi( m );
    const Graph g( m );
    auto first = PairRelation::product( m.initial(), m.initial() ) & pi;
    return run_grow( std::move( first ), pi, g, g, exec );
}

FixpointSeries s_restricted_series( const Fsm& m, Exec exec ) { return s_series( build_restricted( m ), exec ); }

FixpointSeries f_series( const Fsm& m, Exec exec )
{
    for( StateIndex i = 0; i < m.size(); ++i )
        if( m.successors( i ).empty() )
            throw precondition_error( "F series needs a live machine; state '" + m.name( i ) + "' has no successor" );
    const Graph g( m );
    return run_prune( compute_pi( m ), g, g, true, exec );
}

FixpointSeries b_series( const Fsm& m, const PairRelation& sigma, Exec exec )
{
    if( sigma.states() != m.size() )
        throw usage_error( "relation size does not match the machine" );
    if( !sigma.is_subset_of( compute_pi( m ) ) )
        throw usage_error( "B series needs a relation contained in the equal-output pairs" );
    if( !sigma.is_symmetric() )
        throw usage_error( "B series needs a symmetric relation" );
    const Graph g( m );
    return run_prune( sigma, g, g, false, exec );
}

MixedSeries lambda_series( const Fsm& m, const PairRelation& s_star, Exec exec )
{
    const Graph g( m );
    auto first = PairRelation::product( StateMask( m.size(), true ), complement_mask( m.critical() ) ) & s_star;
    MixedSeries out;
    out.ordered = run_prune( std::move( first ), g, g, true, exec );
    out.mixed = mixed_view( m, out.ordered, true );
    return out;
}

MixedSeries gamma_series( const Fsm& m, const PairRelation& s_star, Exec exec )
{
    const Graph g( m );
    auto first = PairRelation::product( StateMask( m.size(), true ), complement_mask( m.critical() ) ) & s_star;
    MixedSeries out;
    out.ordered = run_prune( std::move( first ), g, g, false, exec );
    out.mixed = mixed_view( m, out.ordered, true );
    return out;
}

FixpointSeries asymmetric_s_series( const Fsm& m, Exec exec )
{
    const auto pi = compute_pi( m );
    const Graph restricted( build_restricted( m ) );
    const Graph full( m );
    auto first = PairRelation::product( m.initial(), m.initial() ) & pi;
    return run_grow( std::move( first ), pi, restricted, full, exec );
}

MixedSeries asymmetric_gamma_series( const Fsm& m, const PairRelation& sa_star, Exec exec )
{
    const Graph restricted( build_restricted( m ) );
    const Graph full( m );
    auto first = PairRelation::product( StateMask( m.size(), true ), complement_mask( m.critical() ) ) & sa_star;
    MixedSeries out;
    out.ordered = run_prune( std::move( first ), restricted, full, false, exec );
    out.mixed = mixed_view( m, out.ordered, false );
    return out;
}

} // namespace fsmdiag
