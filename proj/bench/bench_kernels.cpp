// Serial against parallel kernels on random machines of growing size.
#include <benchmark/benchmark.h>

#include <random>

#include "fsmdiag/fixpoint.hpp"
#include "fsmdiag/kernels.hpp"
#include "fsmdiag/oracle.hpp"

using namespace fsmdiag;

namespace
{

Fsm machine( std::size_t n )
{
    std::mt19937_64 rng( n );
    oracle::RandomFsmOptions opt;
    opt.states = n;
    opt.symbols = 3;
    opt.edge_probability = 4.0 / static_cast<double>( n );
    opt.initial_probability = 0.1;
    return oracle::random_live_fsm( rng, opt );
}

Exec exec_of( const benchmark::State& state ) { return state.range( 1 ) ? Exec::parallel : Exec::serial; }

void set_label( benchmark::State& state ) { state.SetLabel( state.range( 1 ) ? "parallel" : "serial" ); }

void BM_grow_step( benchmark::State& state )
{
    const auto m = machine( static_cast<std::size_t>( state.range( 0 ) ) );
    const Graph g( m );
    const auto pi = compute_pi( m );
    const auto half = s_series( m ).at( 3 );
    for( auto _ : state )
        benchmark::DoNotOptimize( kernels::grow_step( half, g, g, pi, exec_of( state ) ) );
    set_label( state );
}

void BM_prune_step( benchmark::State& state )
{
    const auto m = machine( static_cast<std::size_t>( state.range( 0 ) ) );
    const Graph g( m );
    const auto pi = compute_pi( m );
    for( auto _ : state )
        benchmark::DoNotOptimize( kernels::prune_step( pi, g, g, true, exec_of( state ) ) );
    set_label( state );
}

void BM_s_series( benchmark::State& state )
{
    const auto m = machine( static_cast<std::size_t>( state.range( 0 ) ) );
    for( auto _ : state )
        benchmark::DoNotOptimize( s_series( m, exec_of( state ) ) );
    set_label( state );
}

void BM_f_series( benchmark::State& state )
{
    const auto m = machine( static_cast<std::size_t>( state.range( 0 ) ) );
    for( auto _ : state )
        benchmark::DoNotOptimize( f_series( m, exec_of( state ) ) );
    set_label( state );
}

void sizes( benchmark::internal::Benchmark* b )
{
    for( long n : { 64, 200, 512, 1024 } )
        for( long par : { 0, 1 } )
            b->Args( { n, par } );
    b->Unit( benchmark::kMicrosecond );
}

} // namespace

BENCHMARK( BM_grow_step )->Apply( sizes );
BENCHMARK( BM_prune_step )->Apply( sizes );
BENCHMARK( BM_s_series )->Apply( sizes );
BENCHMARK( BM_f_series )->Apply( sizes );

BENCHMARK_MAIN();
