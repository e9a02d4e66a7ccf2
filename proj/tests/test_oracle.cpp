#include <doctest.h>

#include <deque>
#include <random>
#include <set>
#include <tuple>

#include "fsmdiag/checker.hpp"
#include "fsmdiag/errors.hpp"
#include "fsmdiag/fixpoint.hpp"
#include "fsmdiag/oracle.hpp"
#include "helpers.hpp"

using namespace fsmdiag;
using testing::fixture;
using testing::sym;

namespace
{

DiagParams make( std::size_t tau, std::size_t delta, std::size_t g1, std::size_t g2 )
{
    DiagParams p;
    p.tau = tau;
    p.delta = delta;
    p.gamma1 = g1;
    p.gamma2 = g2;
    return p;
}

oracle::Horizon horizon( std::size_t length )
{
    oracle::Horizon h;
    h.length = length;
    return h;
}

void check_counterexample( const Fsm& m, PropertyKind p, const oracle::BoundedVerdict& v )
{
    REQUIRE( v.counterexample );
    const auto& c = *v.counterexample;
    const auto params = force_params( p, v.params );
    CHECK( is_execution( m, c.x ) );
    CHECK( is_execution( m, c.x_hat ) );
    CHECK( m.is_initial( c.x.front() ) );
    CHECK( m.is_initial( c.x_hat.front() ) );
    CHECK( output_of( m, c.x ) == output_of( m, c.x_hat ) );
    const auto k = c.crossing_step;
    CHECK( k >= params.tau + 1 );
    CHECK( m.is_critical( c.x[ k - 1 ] ) );
    if( !params.horizon_infinite )
        CHECK( crossing_index( c.x, m.critical() ) == k );
    CHECK( c.x.size() >= k + params.delta );
    const auto lo = k > params.gamma1 ? k - params.gamma1 : 1;
    for( auto h = lo; h <= std::min( k + params.gamma2, c.x_hat.size() ); ++h )
        CHECK_FALSE( m.is_critical( c.x_hat[ h - 1 ] ) );
}

// Detection without localisation: some δ such that whenever x first enters Ω
// at k, every x̂ with the same output up to k+δ has entered Ω by then.
// Exact search over (x state, x̂ state, x̂ crossed, steps since x crossed).
bool detect_only( const Fsm& m )
{
    const auto n = m.size();
    const std::size_t delta = 4 * n * n + 1;
    using Node = std::tuple<StateIndex, StateIndex, bool, std::size_t>; // d = 0 before the crossing
    std::set<Node> seen;
    std::deque<Node> todo;
    auto push = [ & ]( StateIndex u, StateIndex v, bool hat, std::size_t d ) {
        hat = hat || m.is_critical( v );
        if( d == 0 && m.is_critical( u ) )
            d = 1;
        if( d > 0 && hat )
            return;
        if( seen.emplace( u, v, hat, d ).second )
            todo.emplace_back( u, v, hat, d );
    };
    for( auto u : m.initial_states() )
        for( auto v : m.initial_states() )
            if( m.label( u ) == m.label( v ) )
                push( u, v, false, 0 );
    while( !todo.empty() )
    {
        auto [ u, v, hat, d ] = todo.front();
        todo.pop_front();
        if( d == delta + 1 )
            return false;
        for( auto a : m.successors( u ) )
            for( auto b : m.successors( v ) )
                if( m.label( a ) == m.label( b ) )
                    push( a, b, hat, d > 0 ? d + 1 : 0 );
    }
    return true;
}

} // namespace

TEST_CASE( "relation names round trip" )
{
    for( auto r : { oracle::Relation::S, oracle::Relation::Stilde, oracle::Relation::F, oracle::Relation::B,
                    oracle::Relation::Lambda, oracle::Relation::Gamma, oracle::Relation::Sasym,
                    oracle::Relation::GammaAsym } )
        CHECK( oracle::parse_relation( oracle::to_string( r ) ) == r );
    CHECK_THROWS_AS( (void)oracle::parse_relation( "Q" ), usage_error );
    CHECK( oracle::to_string( oracle::Outcome::consistent ) == "consistent-up-to-horizon" );
}

TEST_CASE( "enumerated relations on the four symbol example" )
{
    const auto m = fixture( "m1.fsm" );
    CHECK( oracle::enum_relation( m, oracle::Relation::F, 2 ) == sym( m, { { "3", "5" } }, true ) );
    CHECK( oracle::enum_relation( m, oracle::Relation::S, 1 )
           == ( PairRelation::product( m.initial(), m.initial() ) & compute_pi( m ) ) );
    CHECK( oracle::enum_relation( m, oracle::Relation::Lambda, 3 ) == sym( m, { { "3", "5" } } ) );
    CHECK( oracle::enum_relation( m, oracle::Relation::Gamma, 3 ) == sym( m, { { "1", "3" } } ) );
    CHECK_THROWS_AS( (void)oracle::enum_relation( m, oracle::Relation::S, 30, nullptr, 100 ), resource_error );
}

TEST_CASE( "reachable pairs are the forward fixed point" )
{
    std::mt19937_64 rng( 51 );
    for( int round = 0; round < 50; ++round )
    {
        const auto m = oracle::random_live_fsm( rng, {} );
        CHECK( oracle::reachable_pairs( m ) == s_series( m ).fixed_point() );
    }
}

TEST_CASE( "definition check on the four symbol example" )
{
    const auto m = fixture( "m1.fsm" );
    const auto ok = oracle::check_definition( m, PropertyKind::eventual, make( 1, 1, 0, 0 ), horizon( 12 ) );
    CHECK( ok.outcome == oracle::Outcome::consistent );
    CHECK( ok.horizon == 12 );
    for( std::size_t delta = 0; delta <= 4; ++delta )
    {
        const auto v = oracle::check_definition( m, PropertyKind::eventual, make( 0, delta, 0, 0 ), horizon( 12 ) );
        REQUIRE( v.outcome == oracle::Outcome::violated );
        check_counterexample( m, PropertyKind::eventual, v );
    }
    const auto late = oracle::check_definition( m, PropertyKind::eventual, make( 1, 0, 0, 0 ), horizon( 12 ) );
    REQUIRE( late.outcome == oracle::Outcome::violated );
    check_counterexample( m, PropertyKind::eventual, late );
    CHECK( m.name( late.counterexample->x_hat[ late.counterexample->crossing_step - 1 ] ) == "1" );
}

TEST_CASE( "definition check argument handling" )
{
    const auto m = fixture( "m1.fsm" );
    CHECK_THROWS_AS( (void)oracle::check_definition( m, PropertyKind::eventual, make( 1, 1, 0, 2 ), horizon( 8 ) ),
                     usage_error );
    const auto one = fixture( "m2.fsm" ).with_initial( testing::mask( fixture( "m2.fsm" ), { "1" } ) );
    CHECK( oracle::check_definition( one, PropertyKind::initial_obs, {}, horizon( 8 ) ).outcome
           == oracle::Outcome::not_applicable );
}

TEST_CASE( "initial state observability agrees with the definition" )
{
    auto m = fixture( "m2.fsm" );
    m = m.with_initial( testing::mask( m, { "1", "2", "4" } ) ).with_critical( testing::mask( m, { "4" } ) );
    const auto v = check( Analysis( m ), PropertyKind::initial_obs );
    const auto probe = v.holds ? *v.params : oracle::probe_params( m, PropertyKind::initial_obs );
    const auto b = oracle::check_definition( m, PropertyKind::initial_obs, probe, horizon( 2 * m.size() * m.size() ) );
    CHECK( v.holds == ( b.outcome == oracle::Outcome::consistent ) );
    // 4 5 6 and 2 3 6 read the same forever
    CHECK_FALSE( v.holds );
    CHECK( v.witness->pair == Pair{ m.index_of( "2" ), m.index_of( "4" ) } );
}

TEST_CASE( "layered and naive definition checks agree" )
{
    std::mt19937_64 rng( 52 );
    std::uniform_int_distribution<std::size_t> small( 0, 2 );
    for( int round = 0; round < 120; ++round )
    {
        oracle::RandomFsmOptions opt;
        opt.states = 4;
        opt.symbols = 2;
        const auto m = oracle::random_live_fsm( rng, opt );
        for( auto p : all_properties() )
        {
            auto params = make( small( rng ), small( rng ) + 1, small( rng ), 0 );
            params.gamma2 = std::min( small( rng ), params.delta );
            const auto fast = oracle::check_definition( m, p, params, horizon( 7 ) );
            const auto slow = oracle::check_definition_naive( m, p, params, horizon( 7 ) );
            CHECK( fast.outcome == slow.outcome );
            if( fast.outcome == oracle::Outcome::violated )
                check_counterexample( m, p, fast );
        }
    }
}

TEST_CASE( "minimal parameters" )
{
    const auto m1 = fixture( "m1.fsm" );
    const auto p = oracle::minimal_params( m1, PropertyKind::eventual, horizon( 12 ), 6 );
    REQUIRE( p );
    CHECK( p->tau == 1 );
    CHECK( p->delta == 1 );
    CHECK( p->gamma() == 0 );

    const auto free = m1.with_critical( StateMask( m1.size(), false ) );
    const auto z = oracle::minimal_params( free, PropertyKind::eventual, horizon( 12 ), 6 );
    REQUIRE( z );
    CHECK( z->tau + z->delta + z->gamma1 + z->gamma2 == 0 );

    const auto m2 = fixture( "m2.fsm" );
    const auto one = m2.with_initial( testing::mask( m2, { "1" } ) );
    const auto c = oracle::minimal_params( one, PropertyKind::critical, horizon( 12 ), 6 );
    REQUIRE( c );
    CHECK( c->tau == 0 );

    CHECK_FALSE( oracle::minimal_params( fixture( "fig2.fsm" ), PropertyKind::parametric, horizon( 10 ), 4 ) );
}

TEST_CASE( "detection without localisation gives the same verdicts as diag" )
{
    for( auto name : { "m1.fsm", "m2.fsm", "fig2.fsm", "vacuous_parametric.fsm" } )
    {
        const auto m = fixture( name );
        CHECK( detect_only( m ) == check( Analysis( m ), PropertyKind::diag ).holds );
    }
    std::mt19937_64 rng( 53 );
    for( int round = 0; round < 150; ++round )
    {
        const auto m = oracle::random_live_fsm( rng, {} );
        CHECK( detect_only( m ) == check( Analysis( m ), PropertyKind::diag ).holds );
    }
}

TEST_CASE( "random machines are live and named" )
{
    std::mt19937_64 rng( 54 );
    for( int round = 0; round < 40; ++round )
    {
        oracle::RandomFsmOptions opt;
        opt.states = 7;
        opt.symbols = 3;
        const auto m = oracle::random_live_fsm( rng, opt );
        CHECK( validate( m, ValidationMode::analysis ).ok() );
        CHECK( m.names().front() == "1" );
        CHECK( m.symbols().size() <= 3 );
    }
}
