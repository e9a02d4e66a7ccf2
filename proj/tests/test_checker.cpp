#include <doctest.h>

#include <algorithm>
#include <random>

#include "fsmdiag/checker.hpp"
#include "fsmdiag/errors.hpp"
#include "fsmdiag/oracle.hpp"
#include "helpers.hpp"

using namespace fsmdiag;
using testing::fixture;
using testing::mask;

namespace
{

DiagParams make( std::size_t tau, std::size_t delta, std::size_t g1, std::size_t g2, bool infinite )
{
    DiagParams p;
    p.tau = tau;
    p.delta = delta;
    p.gamma1 = g1;
    p.gamma2 = g2;
    p.horizon_infinite = infinite;
    return p;
}

Fsm m2_from_one()
{
    const auto m = fixture( "m2.fsm" );
    return m.with_initial( mask( m, { "1" } ) );
}

Fsm without_critical( const Fsm& m ) { return m.with_critical( StateMask( m.size(), false ) ); }

bool has_tuple( const std::vector<FrontierTuple>& f, FrontierTuple t )
{
    return std::find( f.begin(), f.end(), t ) != f.end();
}

} // namespace

TEST_CASE( "property names round trip" )
{
    for( auto p : all_properties() )
        CHECK( parse_property( to_string( p ) ) == p );
    CHECK_THROWS_AS( (void)parse_property( "sometimes" ), usage_error );
}

TEST_CASE( "analysis rejects machines outside its domain" )
{
    CHECK_THROWS_AS( Analysis( parse_fsm( "fsm v1\nstate 1 output=a init\n" ) ), precondition_error );
    CHECK_THROWS_AS( Analysis( parse_fsm( "fsm v1\nstate 1 output=a\ntrans 1 1\n" ) ), precondition_error );
    CHECK_THROWS_AS( Analysis( fixture( "appendix.fsm" ) ), precondition_error );
}

TEST_CASE( "four symbol example verdicts" )
{
    const Analysis a( fixture( "m1.fsm" ) );
    const auto ev = check( a, PropertyKind::eventual );
    REQUIRE( ev.holds );
    CHECK( *ev.params == make( 1, 1, 0, 0, true ) );
    CHECK( has_tuple( ev.frontier, { 2, 2, 1, 1 } ) );

    const auto diag = check( a, PropertyKind::diag );
    CHECK_FALSE( diag.holds );
    REQUIRE( diag.witness );
    CHECK( diag.witness->relation == "Stilde* ∩ Lambda*" );
    CHECK( a.s_tilde().fixed_point().contains( diag.witness->pair.first, diag.witness->pair.second ) );
    CHECK( a.lambda().mixed.fixed_point().contains( diag.witness->pair.first, diag.witness->pair.second ) );

    CHECK_FALSE( check( a, PropertyKind::critical ).holds );
    const auto exact = check( a, PropertyKind::exact_step );
    REQUIRE( exact.holds );
    CHECK( exact.chosen->b == 2 );
    CHECK( exact.chosen->f == 2 );
    CHECK( exact.params->gamma() == 0 );

    const auto par = check( a, PropertyKind::parametric );
    REQUIRE( par.holds );
    CHECK( par.params->tau <= 1 );
    CHECK( par.params->delta <= 1 );
}

TEST_CASE( "seven state example verdicts" )
{
    const Analysis all( fixture( "m2.fsm" ) );
    const auto ev = check( all, PropertyKind::eventual );
    REQUIRE( ev.holds );
    // the frontier is the single tuple (1,1,2,2): tighter than tau=2 delta=2
    CHECK( ev.frontier == std::vector<FrontierTuple>{ { 1, 1, 2, 2 } } );
    CHECK( *ev.params == make( 1, 1, 1, 1, true ) );
    CHECK_FALSE( check( all, PropertyKind::diag ).holds );
    CHECK_FALSE( check( all, PropertyKind::critical ).holds );
    CHECK_FALSE( check( all, PropertyKind::exact_step ).holds );

    const Analysis one( m2_from_one() );
    CHECK( check( one, PropertyKind::diag ).holds );
    const auto crit = check( one, PropertyKind::critical );
    REQUIRE( crit.holds );
    CHECK( crit.params->tau == 0 );
    for( const auto& t : parameter_frontier( one, PropertyKind::eventual ) )
        CHECK_FALSE( ( t.b == 1 && t.g == 1 ) );
}

TEST_CASE( "parametric verdict on the reconstructed non diagnosable machine" )
{
    const Analysis a( fixture( "fig2.fsm" ) );
    const auto& m = a.machine();
    const auto theta = PairRelation::diagonal( m.size() );
    CHECK( ( a.b_tilde().fixed_point() - theta ) == testing::sym( m, { { "3", "4" } } ) );
    CHECK( a.lambda().mixed.fixed_point() == testing::sym( m, { { "3", "4" } } ) );
    const auto v = check( a, PropertyKind::parametric );
    CHECK_FALSE( v.holds );
    REQUIRE( v.witness );
    CHECK( v.witness->pair == Pair{ m.index_of( "3" ), m.index_of( "4" ) } );
}

TEST_CASE( "parametric verdict is not decided by B*(Stilde*) and Lambda* alone" )
{
    // every first crossing happens at step 2, so tau=2 makes the property vacuous
    const Analysis a( fixture( "vacuous_parametric.fsm" ) );
    CHECK( a.b_tilde().fixed_point().intersects( a.lambda().mixed.fixed_point() ) );
    const auto v = check( a, PropertyKind::parametric );
    REQUIRE( v.holds );
    CHECK( v.params->tau == 2 );
    oracle::Horizon h;
    h.length = 24;
    CHECK( oracle::check_definition( a.machine(), PropertyKind::parametric, *v.params, h ).outcome
           == oracle::Outcome::consistent );
}

TEST_CASE( "empty critical set" )
{
    for( auto name : { "m1.fsm", "m2.fsm", "fig2.fsm" } )
    {
        const Analysis a( without_critical( fixture( name ) ) );
        for( auto p : all_properties() )
        {
            if( p == PropertyKind::initial_obs )
                continue;
            const auto v = check( a, p );
            CHECK( v.holds );
            CHECK( v.params->tau == 0 );
            CHECK( v.params->delta == 0 );
            CHECK( v.params->gamma() == 0 );
        }
        CHECK( parameter_frontier( a, PropertyKind::eventual ) == std::vector<FrontierTuple>{ { 1, 1, 1, 1 } } );
    }
}

TEST_CASE( "every state critical" )
{
    const auto m = fixture( "m1.fsm" );
    const Analysis a( m.with_critical( StateMask( m.size(), true ) ) );
    CHECK( check( a, PropertyKind::eventual_obs ).holds );
    CHECK( check( a, PropertyKind::critical_obs ).holds );
}

TEST_CASE( "initial state observability" )
{
    const auto m = parse_fsm( "fsm v1\nstate i output=a init critical\nstate j output=a init\nstate k output=b\n"
                              "trans i k\ntrans j k\ntrans k k\n" );
    const auto v = check( Analysis( m ), PropertyKind::initial_obs );
    CHECK_FALSE( v.holds );
    REQUIRE( v.witness );
    CHECK( v.witness->pair == Pair{ 0, 1 } );

    const auto distinct = parse_fsm( "fsm v1\nstate i output=a init critical\nstate j output=b init\n"
                                     "trans i j\ntrans j i\n" );
    CHECK( check( Analysis( distinct ), PropertyKind::initial_obs ).holds );

    const auto outside = fixture( "m2.fsm" );
    CHECK_THROWS_AS( (void)check( Analysis( m2_from_one() ), PropertyKind::initial_obs ), usage_error );
    (void)outside;
}

TEST_CASE( "critical states with a private output are observable" )
{
    const auto m = parse_fsm( "fsm v1\nstate 1 output=a init\nstate 2 output=a init\nstate 3 output=z critical\n"
                              "trans 1 2\ntrans 2 3\ntrans 3 1\ntrans 2 1\n" );
    const Analysis a( m );
    CHECK( check( a, PropertyKind::critical_obs ).holds );
    CHECK( check( a, PropertyKind::eventual_obs ).holds );
}

TEST_CASE( "frontier tuples are pairwise incomparable" )
{
    std::mt19937_64 rng( 21 );
    for( int round = 0; round < 60; ++round )
    {
        const Analysis a( oracle::random_live_fsm( rng, {} ) );
        for( auto p : { PropertyKind::eventual, PropertyKind::parametric, PropertyKind::diag } )
        {
            if( !check( a, p ).holds )
            {
                CHECK_THROWS_AS( (void)parameter_frontier( a, p ), usage_error );
                continue;
            }
            const auto f = parameter_frontier( a, p );
            for( std::size_t i = 0; i < f.size(); ++i )
                for( std::size_t j = 0; j < f.size(); ++j )
                    if( i != j )
                        CHECK_FALSE( ( f[ i ].b <= f[ j ].b && f[ i ].f <= f[ j ].f && f[ i ].g <= f[ j ].g
                                       && f[ i ].l <= f[ j ].l ) );
        }
    }
}

TEST_CASE( "critical holds exactly when diag and eventual hold" )
{
    std::mt19937_64 rng( 22 );
    for( int round = 0; round < 150; ++round )
    {
        const Analysis a( oracle::random_live_fsm( rng, {} ) );
        const bool crit = check( a, PropertyKind::critical ).holds;
        CHECK( crit == ( check( a, PropertyKind::diag ).holds && check( a, PropertyKind::eventual ).holds ) );
        if( check( a, PropertyKind::critical_obs ).holds )
            CHECK( check( a, PropertyKind::eventual_obs ).holds );
    }
}

TEST_CASE( "failing verdicts carry a witness inside the violating set" )
{
    std::mt19937_64 rng( 23 );
    for( int round = 0; round < 100; ++round )
    {
        const Analysis a( oracle::random_live_fsm( rng, {} ) );
        for( auto p : all_properties() )
        {
            DiagVerdict v;
            try
            {
                v = check( a, p );
            }
            catch( const usage_error& )
            {
                continue;
            }
            CHECK( v.property == p );
            if( v.holds )
            {
                CHECK( v.params.has_value() );
                CHECK( v.params->horizon_infinite == horizon_infinite( p ) );
                CHECK( force_params( p, *v.params ) == *v.params );
                continue;
            }
            REQUIRE( v.witness );
            const auto [ i, j ] = v.witness->pair;
            CHECK( a.mixed().contains( i, j ) );
            CHECK( a.s().fixed_point().contains( i, j ) );
        }
    }
}

TEST_CASE( "forced parameters" )
{
    const auto all = make( 3, 4, 5, 2, false );
    CHECK( force_params( PropertyKind::diag, all ) == make( 0, 4, 5, 2, false ) );
    CHECK( force_params( PropertyKind::eventual, all ) == make( 3, 4, 5, 2, true ) );
    CHECK( force_params( PropertyKind::critical, all ) == make( 0, 4, 5, 2, true ) );
    CHECK( force_params( PropertyKind::eventual_obs, all ) == make( 3, 0, 0, 0, true ) );
    CHECK( force_params( PropertyKind::critical_obs, all ) == make( 0, 0, 0, 0, true ) );
    CHECK( force_params( PropertyKind::exact_step, all ) == make( 3, 4, 0, 0, true ) );
    CHECK( force_params( PropertyKind::initial_obs, all ) == make( 0, 4, 0, 0, false ) );
    CHECK( force_params( PropertyKind::parametric, all ) == make( 3, 4, 5, 2, false ) );
}
