#include <doctest.h>

#include <random>

#include "fsmdiag/epsremoval.hpp"
#include "fsmdiag/errors.hpp"
#include "fsmdiag/oracle.hpp"
#include "helpers.hpp"

using namespace fsmdiag;
using testing::fixture;
using testing::path;

namespace
{

std::vector<std::string> transition_names( const Fsm& m )
{
    std::vector<std::string> out;
    for( auto [ i, j ] : m.transitions() )
        out.push_back( m.name( i ) + ">" + m.name( j ) );
    std::sort( out.begin(), out.end() );
    return out;
}

// Random live machine in which some non initial states are silent and no
// silent cycle exists.
std::optional<Fsm> random_silent_fsm( std::mt19937_64& rng )
{
    oracle::RandomFsmOptions opt;
    opt.states = std::uniform_int_distribution<std::size_t>( 3, 6 )( rng );
    opt.symbols = std::uniform_int_distribution<std::size_t>( 1, 3 )( rng );
    const auto base = oracle::random_live_fsm( rng, opt );
    auto labels = base.labels();
    std::bernoulli_distribution coin( 0.35 );
    for( StateIndex i = 0; i < base.size(); ++i )
        if( !base.is_initial( i ) && coin( rng ) )
            labels[ i ] = silent_symbol;
    Fsm m( base.names(), base.symbols(), labels, base.transitions(), base.initial(), base.critical() );
    const auto r = validate( m, ValidationMode::desilent );
    if( r.has( ViolationKind::silent_cycle ) || r.has( ViolationKind::silent_initial ) )
        return std::nullopt;
    return m;
}

} // namespace

TEST_CASE( "longest silent run" )
{
    CHECK( max_silent_length( fixture( "m1.fsm" ) ) == 0 );
    CHECK( max_silent_length( fixture( "appendix.fsm" ) ) == 1 );
    CHECK( max_silent_length( fixture( "silent_chain.fsm" ) ) == 2 );
    const auto chain = parse_fsm( "fsm v1\nstate 0 output=a init\nstate 1 output=_\nstate 2 output=_\n"
                                  "state 3 output=_\nstate 4 output=b\n"
                                  "trans 0 1\ntrans 1 2\ntrans 2 3\ntrans 3 4\ntrans 4 0\n" );
    CHECK( max_silent_length( chain ) == 3 );
    const auto cycle = parse_fsm( "fsm v1\nstate 0 output=a init\nstate 1 output=_\nstate 2 output=_\n"
                                  "trans 0 1\ntrans 1 2\ntrans 2 1\n" );
    CHECK_THROWS_AS( (void)max_silent_length( cycle ), precondition_error );
}

TEST_CASE( "silent context of the appendix machine" )
{
    const auto m = fixture( "appendix.fsm" );
    const auto c = silent_context( m );
    CHECK( mask_to_states( c.silent ) == std::vector<StateIndex>{ m.index_of( "3" ) } );
    CHECK( testing::names( m, mask_to_states( c.first ) ) == std::vector<std::string>{ "1", "2" } );
    CHECK( testing::names( m, mask_to_states( c.last ) ) == std::vector<std::string>{ "3" } );
    CHECK( c.lambda == 1 );
}

TEST_CASE( "avoiding gate" )
{
    const auto a = fixture( "appendix.fsm" );
    CHECK_THROWS_AS( (void)silent_reach_avoiding( a, a.index_of( "3" ), a.index_of( "1" ) ), usage_error );
    CHECK_THROWS_AS( (void)silent_reach_avoiding( a, a.index_of( "1" ), a.index_of( "0" ) ), usage_error );

    const auto c = fixture( "silent_chain.fsm" );
    CHECK( silent_reach_avoiding( c, c.index_of( "2" ), c.index_of( "3" ) ) );
    CHECK_FALSE( silent_reach_avoiding( c, c.index_of( "2" ), c.index_of( "0" ) ) );
    CHECK_THROWS_AS( (void)silent_reach_avoiding( c, c.index_of( "1" ), c.index_of( "0" ) ), usage_error );

    const auto s = fixture( "silent_split.fsm" );
    CHECK( silent_reach_avoiding( s, s.index_of( "2" ), s.index_of( "0" ) ) );
    CHECK_FALSE( silent_reach_avoiding( s, s.index_of( "2" ), s.index_of( "3" ) ) );
}

TEST_CASE( "crossing gate" )
{
    const auto a = fixture( "appendix.fsm" );
    CHECK( silent_reach_crossing( a, a.index_of( "3" ), a.index_of( "1" ) ) );
    CHECK( silent_reach_crossing( a, a.index_of( "3" ), a.index_of( "2" ) ) );
    CHECK_FALSE( silent_reach_crossing( a, a.index_of( "3" ), a.index_of( "0" ) ) );
    CHECK_THROWS_AS( (void)silent_reach_crossing( a, a.index_of( "1" ), a.index_of( "0" ) ), usage_error );

    const auto free = a.with_critical( StateMask( a.size(), false ) );
    for( auto w : { "0", "1", "2", "4", "5" } )
        CHECK_FALSE( silent_reach_crossing( free, free.index_of( "3" ), free.index_of( w ) ) );

    const auto c = fixture( "silent_chain.fsm" );
    CHECK( silent_reach_crossing( c, c.index_of( "2" ), c.index_of( "0" ) ) );
    CHECK_FALSE( silent_reach_crossing( c, c.index_of( "2" ), c.index_of( "3" ) ) );
}

TEST_CASE( "appendix machine" )
{
    const auto m = fixture( "appendix.fsm" );
    const auto r = desilent( m );
    const auto& h = r.m_hat;
    CHECK( h.names() == std::vector<std::string>{ "0", "4", "5", "3@1!", "3@2!" } );
    CHECK( testing::names( h, h.critical_states() ) == std::vector<std::string>{ "3@1!", "3@2!" } );
    CHECK( testing::names( h, h.initial_states() ) == std::vector<std::string>{ "0", "4" } );
    CHECK( transition_names( h )
           == std::vector<std::string>{ "0>3@1!", "3@1!>4", "3@1!>5", "3@2!>4", "3@2!>5", "4>3@2!", "4>5",
                                        "5>5" } );
    CHECK( h.symbol_name( h.label( h.index_of( "3@1!" ) ) ) == "a" );
    CHECK( h.symbol_name( h.label( h.index_of( "3@2!" ) ) ) == "b" );
    CHECK( r.provenance.at( "3@1!" ) == SilentOrigin{ "3", "1", true } );
    CHECK( r.provenance.at( "3@2!" ) == SilentOrigin{ "3", "2", true } );
    CHECK( collapse_execution( m, r, path( m, { "0", "1", "3", "5" } ) ) == path( h, { "0", "3@1!", "5" } ) );
    CHECK_THROWS_AS( (void)collapse_execution( m, r, path( m, { "0", "1", "3" } ) ), usage_error );
    CHECK( projected_language( m, 8 ) == projected_language( h, 8 ) );
}

TEST_CASE( "visible states without successors are dropped" )
{
    const auto m = fixture( "silent_chain.fsm" );
    const auto r = desilent( m );
    const auto& h = r.m_hat;
    CHECK( h.names() == std::vector<std::string>{ "4", "2@0!", "2@3" } );
    CHECK( testing::names( h, h.critical_states() ) == std::vector<std::string>{ "2@0!" } );
    CHECK( r.provenance.at( "2@3" ) == SilentOrigin{ "2", "3", false } );
    CHECK_FALSE( h.find( "0" ).has_value() );
    CHECK( validate( h, ValidationMode::analysis ).ok() );
    CHECK( projected_language( m, 6 ) == projected_language( h, 6 ) );
}

TEST_CASE( "silent states with mixed successors are split" )
{
    const auto m = fixture( "silent_split.fsm" );
    const auto r = desilent( m );
    CHECK( r.split.find( "1.s" ).has_value() );
    CHECK( r.split.find( "1.n" ).has_value() );
    CHECK_FALSE( r.split.find( "1" ).has_value() );
    CHECK( testing::names( r.split, r.split.successors( r.split.index_of( "1.s" ) ) )
           == std::vector<std::string>{ "2" } );
    CHECK( testing::names( r.split, r.split.successors( r.split.index_of( "1.n" ) ) )
           == std::vector<std::string>{ "3" } );
    CHECK( r.m_hat.find( "1.n@0" ).has_value() );
    CHECK( projected_language( m, 7 ) == projected_language( r.m_hat, 7 ) );
}

TEST_CASE( "machines without silent states are unchanged" )
{
    const auto m = fixture( "m1.fsm" );
    const auto r = desilent( m );
    CHECK( r.m_hat.names() == m.names() );
    CHECK( r.m_hat.transitions() == m.transitions() );
    CHECK( r.m_hat.critical() == m.critical() );
    CHECK( r.m_hat.initial() == m.initial() );
    CHECK( r.provenance.empty() );
}

TEST_CASE( "inputs the construction cannot handle" )
{
    CHECK_THROWS_AS( (void)desilent( parse_fsm( "fsm v1\nstate 0 output=a init\nstate 1 output=_\nstate 2 output=_\n"
                                                "trans 0 1\ntrans 1 2\ntrans 2 1\n" ) ),
                     precondition_error );
    CHECK_THROWS_AS( (void)desilent( parse_fsm( "fsm v1\nstate 0 output=_ init\nstate 1 output=a\n"
                                                "trans 0 1\ntrans 1 1\n" ) ),
                     precondition_error );
    CHECK_THROWS_AS( (void)desilent( parse_fsm( "fsm v1\nstate 0 output=a init\nstate 1 output=_\ntrans 0 1\n" ) ),
                     precondition_error );
}

TEST_CASE( "random machines keep their language, trajectories and crossings" )
{
    std::mt19937_64 rng( 31 );
    int tried = 0;
    for( int round = 0; round < 400 && tried < 80; ++round )
    {
        const auto m = random_silent_fsm( rng );
        if( !m )
            continue;
        ++tried;
        const auto r = desilent( *m );
        const auto& h = r.m_hat;
        CHECK( projected_language( *m, 6 ) == projected_language( h, 6 ) );
        for( std::size_t len = 1; len <= 6; ++len )
            for( const auto& x : enumerate_executions( *m, m->initial_states(), len ) )
            {
                if( m->is_silent( x.back() ) )
                    continue;
                const auto xh = collapse_execution( *m, r, x );
                CHECK( is_execution( h, xh ) );
                CHECK( h.is_initial( xh.front() ) );
                CHECK( output_of( h, xh ) == output_of( *m, x ) );
                const auto k = crossing_index( x, m->critical() );
                const auto kh = crossing_index( xh, h.critical() );
                if( k )
                {
                    REQUIRE( kh.has_value() );
                    CHECK( xh.size() - *kh <= x.size() - *k );
                }
            }
    }
    CHECK( tried >= 40 );
}
