#include "fsmdiag/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fsmdiag/errors.hpp"

namespace fsmdiag::oracle
{

std::size_t budget_from_env()
{
    if( const char* env = std::getenv( "FSMDIAG_BUDGET" ) )
    {
        char* end = nullptr;
        auto v = std::strtoull( env, &end, 10 );
        if( end != env && *end == '\0' && v > 0 )
            return static_cast<std::size_t>( v );
    }
    return default_enumeration_budget;
}

namespace
{

class Meter
{
    std::size_t _used = 0;
    std::size_t _limit;

public:
    explicit Meter( std::size_t limit ) : _limit{ limit } {}

    void tick( std::size_t n = 1 )
    {
        _used += n;
        if( _used > _limit )
            throw resource_error( "oracle work budget of " + std::to_string( _limit ) + " exceeded" );
    }
};

constexpr std::array<std::pair<Relation, std::string_view>, 8> relation_names{ {
        { Relation::S, "S" },
        { Relation::Stilde, "Stilde" },
        { Relation::F, "F" },
        { Relation::B, "B" },
        { Relation::Lambda, "Lambda" },
        { Relation::Gamma, "Gamma" },
        { Relation::Sasym, "Sasym" },
        { Relation::GammaAsym, "GammaAsym" },
} };

StateMask complement( StateMask m )
{
    m.flip();
    return m;
}

using Successors = std::vector<std::vector<StateIndex>>;

Successors successor_lists( const Fsm& m )
{
    Successors out( m.size() );
    for( auto [ i, j ] : m.transitions() )
        out[ i ].push_back( j );
    return out;
}

Successors predecessor_lists( const Fsm& m )
{
    Successors out( m.size() );
    for( auto [ i, j ] : m.transitions() )
        out[ j ].push_back( i );
    return out;
}

// Pairs of end states of equal output executions from X0 with lengths 1..k.
// The x side moves along `sx`, the x̂ side along `sy`.
PairRelation strings_from_initial( const Fsm& m, const Successors& sx, const Successors& sy, std::size_t k,
                                   Meter& meter )
{
    using Ends = std::pair<StateMask, StateMask>;
    const auto n = m.size();
    std::map<OutputString, Ends> layer;
    for( StateIndex i = 0; i < n; ++i )
        if( m.is_initial( i ) )
        {
            auto& e = layer[ { m.label( i ) } ];
            e.first.resize( n );
            e.second.resize( n );
            e.first[ i ] = e.second[ i ] = true;
        }
    PairRelation out( n );
    for( std::size_t len = 1; len <= k && !layer.empty(); ++len )
    {
        for( const auto& [ str, ends ] : layer )
            for( StateIndex i = 0; i < n; ++i )
                for( StateIndex j = 0; j < n && ends.first[ i ]; ++j )
                    if( ends.second[ j ] )
                        out.insert( i, j );
        if( len == k )
            break;
        std::map<OutputString, Ends> next;
        for( const auto& [ str, ends ] : layer )
        {
            meter.tick();
            for( int side = 0; side < 2; ++side )
            {
                const auto& mask = side == 0 ? ends.first : ends.second;
                const auto& succ = side == 0 ? sx : sy;
                for( StateIndex i = 0; i < n; ++i )
                {
                    if( !mask[ i ] )
                        continue;
                    for( auto j : succ[ i ] )
                    {
                        auto s = str;
                        s.push_back( m.label( j ) );
                        auto& e = next[ s ];
                        e.first.resize( n );
                        e.second.resize( n );
                        ( side == 0 ? e.first : e.second )[ j ] = true;
                    }
                }
            }
        }
        layer = std::move( next );
    }
    return out;
}

// Output strings of length exactly k of executions starting in each state.
// With `avoid` set the execution must stay out of Ω.
std::vector<std::set<OutputString>> strings_from_each( const Fsm& m, std::size_t k, bool avoid, Meter& meter )
{
    const auto n = m.size();
    const auto succ = successor_lists( m );
    std::vector<std::set<OutputString>> cur( n );
    for( StateIndex i = 0; i < n; ++i )
        if( !( avoid && m.is_critical( i ) ) )
            cur[ i ].insert( { m.label( i ) } );
    for( std::size_t len = 2; len <= k; ++len )
    {
        std::vector<std::set<OutputString>> next( n );
        for( StateIndex i = 0; i < n; ++i )
        {
            if( avoid && m.is_critical( i ) )
                continue;
            for( auto j : succ[ i ] )
                for( const auto& s : cur[ j ] )
                {
                    meter.tick();
                    OutputString t{ m.label( i ) };
                    t.insert( t.end(), s.begin(), s.end() );
                    next[ i ].insert( std::move( t ) );
                }
        }
        cur = std::move( next );
    }
    return cur;
}

bool meet( const std::set<OutputString>& a, const std::set<OutputString>& b )
{
    auto ia = a.begin();
    auto ib = b.begin();
    while( ia != a.end() && ib != b.end() )
    {
        if( *ia < *ib )
            ++ia;
        else if( *ib < *ia )
            ++ib;
        else
            return true;
    }
    return false;
}

// Pairs (i,j) ending two equal length-k executions whose pairs all lie in
// `inside`. The x side steps back along `px`, the x̂ side along `py`.
PairRelation backward_paths( std::size_t n, const PairRelation& inside, const Successors& px, const Successors& py,
                             std::size_t k, Meter& meter )
{
    // memo[r][i*n+j]: 0 unknown, 1 yes, 2 no
    std::vector<std::vector<std::uint8_t>> memo( k + 1, std::vector<std::uint8_t>( n * n, 0 ) );
    auto ok = [ & ]( auto& self, StateIndex i, StateIndex j, std::size_t r ) -> bool {
        if( !inside.contains( i, j ) )
            return false;
        if( r == 1 )
            return true;
        auto& slot = memo[ r ][ i * n + j ];
        if( slot != 0 )
            return slot == 1;
        meter.tick();
        bool found = false;
        for( auto p : px[ i ] )
        {
            for( auto q : py[ j ] )
                if( self( self, p, q, r - 1 ) )
                {
                    found = true;
                    break;
                }
            if( found )
                break;
        }
        slot = found ? 1 : 2;
        return found;
    };
    PairRelation out( n );
    for( StateIndex i = 0; i < n; ++i )
        for( StateIndex j = 0; j < n; ++j )
            if( ok( ok, i, j, k ) )
                out.insert( i, j );
    return out;
}

PairRelation reachable_ordered( const Fsm& m, const Successors& sx, const Successors& sy )
{
    const auto n = m.size();
    PairRelation seen( n );
    std::deque<Pair> todo;
    for( StateIndex i = 0; i < n; ++i )
        for( StateIndex j = 0; j < n; ++j )
            if( m.is_initial( i ) && m.is_initial( j ) && m.label( i ) == m.label( j ) )
            {
                seen.insert( i, j );
                todo.emplace_back( i, j );
            }
    while( !todo.empty() )
    {
        auto [ i, j ] = todo.front();
        todo.pop_front();
        for( auto p : sx[ i ] )
            for( auto q : sy[ j ] )
                if( m.label( p ) == m.label( q ) && !seen.contains( p, q ) )
                {
                    seen.insert( p, q );
                    todo.emplace_back( p, q );
                }
    }
    return seen;
}

PairRelation not_critical_columns( const Fsm& m )
{
    return PairRelation::product( StateMask( m.size(), true ), complement( m.critical() ) );
}

PairRelation critical_cross( const Fsm& m ) { return PairRelation::product( m.critical(), complement( m.critical() ) ); }

} // namespace

std::string_view to_string( Relation r )
{
    for( auto [ k, n ] : relation_names )
        if( k == r )
            return n;
    return "unknown";
}

Relation parse_relation( std::string_view name )
{
    for( auto [ k, n ] : relation_names )
        if( n == name )
            return k;
    throw usage_error( "unknown relation '" + std::string( name ) + "'" );
}

PairRelation reachable_pairs( const Fsm& m )
{
    const auto s = successor_lists( m );
    return reachable_ordered( m, s, s );
}

PairRelation enum_relation( const Fsm& m, Relation which, std::size_t k, const PairRelation* sigma,
                            std::size_t budget )
{
    if( k == 0 )
        throw usage_error( "relation index starts at 1" );
    Meter meter( budget );
    const auto n = m.size();
    switch( which )
    {
    case Relation::S:
    {
        auto s = successor_lists( m );
        return strings_from_initial( m, s, s, k, meter );
    }
    case Relation::Stilde:
    {
        auto s = successor_lists( build_restricted( m ) );
        return strings_from_initial( m, s, s, k, meter );
    }
    case Relation::Sasym:
        return strings_from_initial( m, successor_lists( build_restricted( m ) ), successor_lists( m ), k, meter );
    case Relation::F:
    {
        auto from = strings_from_each( m, k, false, meter );
        PairRelation out( n );
        for( StateIndex i = 0; i < n; ++i )
            for( StateIndex j = 0; j < n; ++j )
                if( meet( from[ i ], from[ j ] ) )
                    out.insert( i, j );
        return out;
    }
    case Relation::Lambda:
    {
        auto from = strings_from_each( m, k, false, meter );
        auto clean = strings_from_each( m, k, true, meter );
        const auto s_star = reachable_pairs( m );
        PairRelation out( n );
        for( StateIndex i = 0; i < n; ++i )
            for( StateIndex j = 0; j < n; ++j )
                if( m.is_critical( i ) && !m.is_critical( j ) && s_star.contains( i, j )
                    && meet( from[ i ], clean[ j ] ) )
                {
                    out.insert( i, j );
                    out.insert( j, i );
                }
        return out;
    }
    case Relation::B:
    {
        const auto s_star = sigma ? *sigma : reachable_pairs( m );
        const auto p = predecessor_lists( m );
        return backward_paths( n, s_star, p, p, k, meter );
    }
    case Relation::Gamma:
    {
        const auto inside = reachable_pairs( m ) & not_critical_columns( m );
        const auto p = predecessor_lists( m );
        auto ends = backward_paths( n, inside, p, p, k, meter ) & critical_cross( m );
        return ends.symmetric_closure();
    }
    case Relation::GammaAsym:
    {
        const auto restricted = build_restricted( m );
        const auto sa = reachable_ordered( m, successor_lists( restricted ), successor_lists( m ) );
        const auto inside = sa & not_critical_columns( m );
        return backward_paths( n, inside, predecessor_lists( restricted ), predecessor_lists( m ), k, meter )
             & critical_cross( m );
    }
    }
    return PairRelation( n );
}

std::string_view to_string( Outcome o )
{
    switch( o )
    {
    case Outcome::violated:
        return "violated";
    case Outcome::consistent:
        return "consistent-up-to-horizon";
    case Outcome::not_applicable:
        return "not-applicable";
    }
    return "unknown";
}

namespace
{

bool critical_inside_initial( const Fsm& m )
{
    for( StateIndex i = 0; i < m.size(); ++i )
        if( m.is_critical( i ) && !m.is_initial( i ) )
            return false;
    return true;
}

struct Setup
{
    DiagParams params;
    bool first_crossing_only = false; // T = 0
    bool first_step_only = false;     // initial state observability
};

// Returns nullopt when the property does not apply to the machine.
std::optional<Setup> prepare( const Fsm& m, PropertyKind p, DiagParams params, BoundedVerdict& v )
{
    params = force_params( p, params );
    v.params = params;
    if( params.gamma2 > params.delta )
        throw usage_error( "gamma2 must not exceed delta" );
    if( p == PropertyKind::initial_obs && !critical_inside_initial( m ) )
    {
        v.outcome = Outcome::not_applicable;
        v.note = "critical set is not contained in the initial set";
        return std::nullopt;
    }
    Setup s;
    s.params = params;
    s.first_crossing_only = !params.horizon_infinite;
    s.first_step_only = p == PropertyKind::initial_obs;
    return s;
}

// Configurations of the layered search. Before the crossing is fixed a
// configuration is (x(k), x̂(k), trailing Ω free run of x̂ capped at γ1+1).
// After it, (x(k), x̂(k), steps since the crossing). With T = 0, prefixes
// where x already visited Ω are dropped.
class Search
{
    const Fsm& _m;
    const Setup& _s;
    std::size_t _n;
    std::size_t _run_cap;

    struct Node
    {
        bool taken = false;
        std::int32_t parent = -1; // index in the parent's layer table
        bool parent_pre = true;   // parent is a pre crossing node
        bool same_layer = false;  // parent lives in the same layer
    };

    std::vector<std::vector<Node>> _pre;
    std::vector<std::vector<Node>> _post;
    std::vector<std::vector<std::uint32_t>> _pre_live;
    std::vector<std::vector<std::uint32_t>> _post_live;

    [[nodiscard]] std::size_t pre_index( StateIndex u, StateIndex v, std::size_t run ) const
    {
        return ( static_cast<std::size_t>( u ) * _n + v ) * ( _run_cap + 1 ) + run;
    }
    [[nodiscard]] std::size_t post_index( StateIndex u, StateIndex v, std::size_t d ) const
    {
        return ( static_cast<std::size_t>( u ) * _n + v ) * ( _s.params.delta + 1 ) + d;
    }
    [[nodiscard]] Pair split( std::size_t uv ) const
    {
        return { static_cast<StateIndex>( uv / _n ), static_cast<StateIndex>( uv % _n ) };
    }

    static void add( std::vector<Node>& table, std::vector<std::uint32_t>& live, std::size_t idx, Node node )
    {
        if( table[ idx ].taken )
            return;
        node.taken = true;
        table[ idx ] = node;
        live.push_back( static_cast<std::uint32_t>( idx ) );
    }

    [[nodiscard]] Counterexample rebuild( std::size_t layer, std::size_t idx ) const
    {
        std::vector<Pair> at( layer + 1 );
        Counterexample c;
        bool post = true;
        std::size_t l = layer;
        std::size_t i = idx;
        while( true )
        {
            const Node& node = post ? _post[ l ][ i ] : _pre[ l ][ i ];
            at[ l ] = post ? split( i / ( _s.params.delta + 1 ) ) : split( i / ( _run_cap + 1 ) );
            if( node.parent < 0 )
                break;
            if( node.same_layer )
                c.crossing_step = l + 1;
            else
                --l;
            post = !node.parent_pre;
            i = static_cast<std::size_t>( node.parent );
        }
        for( auto [ u, v ] : at )
        {
            c.x.push_back( u );
            c.x_hat.push_back( v );
        }
        return c;
    }

public:
    Search( const Fsm& m, const Setup& s ) : _m{ m }, _s{ s }, _n{ m.size() }, _run_cap{ s.params.gamma1 + 1 } {}

    std::optional<Counterexample> run( std::size_t horizon, Meter& meter )
    {
        const auto& p = _s.params;
        const auto succ = successor_lists( _m );
        const auto post_size = _n * _n * ( p.delta + 1 );
        const auto pre_size = _n * _n * ( _run_cap + 1 );
        for( std::size_t layer = 0; layer < horizon; ++layer )
        {
            const std::size_t k = layer + 1;
            _pre.emplace_back( pre_size );
            _post.emplace_back( post_size );
            _pre_live.emplace_back();
            _post_live.emplace_back();
            auto& pre = _pre.back();
            auto& post = _post.back();
            auto& pre_live = _pre_live.back();
            auto& post_live = _post_live.back();
            if( layer == 0 )
            {
                for( StateIndex u = 0; u < _n; ++u )
                    for( StateIndex v = 0; v < _n; ++v )
                        if( _m.is_initial( u ) && _m.is_initial( v ) && _m.label( u ) == _m.label( v ) )
                            add( pre, pre_live, pre_index( u, v, _m.is_critical( v ) ? 0 : 1 ), Node{} );
            }
            else
            {
                const auto prev = layer - 1;
                if( !_s.first_step_only )
                    for( auto idx : _pre_live[ prev ] )
                    {
                        auto [ u, v ] = split( idx / ( _run_cap + 1 ) );
                        if( _s.first_crossing_only && _m.is_critical( u ) )
                            continue;
                        auto run = idx % ( _run_cap + 1 );
                        for( auto u2 : succ[ u ] )
                            for( auto v2 : succ[ v ] )
                            {
                                if( _m.label( u2 ) != _m.label( v2 ) )
                                    continue;
                                meter.tick();
                                auto r2 = _m.is_critical( v2 ) ? 0 : std::min( run + 1, _run_cap );
                                add( pre, pre_live, pre_index( u2, v2, r2 ),
                                     Node{ false, static_cast<std::int32_t>( idx ), true, false } );
                            }
                    }
                for( auto idx : _post_live[ prev ] )
                {
                    auto [ u, v ] = split( idx / ( p.delta + 1 ) );
                    auto d = idx % ( p.delta + 1 );
                    for( auto u2 : succ[ u ] )
                        for( auto v2 : succ[ v ] )
                        {
                            if( _m.label( u2 ) != _m.label( v2 ) )
                                continue;
                            if( d + 1 <= p.gamma2 && _m.is_critical( v2 ) )
                                continue;
                            meter.tick();
                            add( post, post_live, post_index( u2, v2, d + 1 ),
                                 Node{ false, static_cast<std::int32_t>( idx ), false, false } );
                        }
                }
            }
            // fix a crossing at step k
            if( k >= p.tau + 1 && !( _s.first_step_only && k != 1 ) )
                for( auto idx : pre_live )
                {
                    auto [ u, v ] = split( idx / ( _run_cap + 1 ) );
                    auto run = idx % ( _run_cap + 1 );
                    if( !_m.is_critical( u ) || _m.is_critical( v ) || run < std::min( k, _run_cap ) )
                        continue;
                    add( post, post_live, post_index( u, v, 0 ),
                         Node{ false, static_cast<std::int32_t>( idx ), true, true } );
                }
            for( auto idx : post_live )
                if( idx % ( p.delta + 1 ) == p.delta )
                    return rebuild( layer, idx );
            if( pre_live.empty() && post_live.empty() )
                break;
        }
        return std::nullopt;
    }
};

} // namespace

BoundedVerdict check_definition( const Fsm& m, PropertyKind p, DiagParams params, const Horizon& h )
{
    BoundedVerdict v;
    v.horizon = h.length;
    auto setup = prepare( m, p, params, v );
    if( !setup )
        return v;
    Meter meter( h.budget );
    Search search( m, *setup );
    if( auto c = search.run( h.length, meter ) )
    {
        v.outcome = Outcome::violated;
        v.counterexample = std::move( c );
    }
    return v;
}

namespace
{

// Executions from X0 of the given length whose output equals `target`.
void same_output( const Fsm& m, const OutputString& target, Execution& cur, std::vector<Execution>& out,
                  Meter& meter )
{
    if( cur.size() == target.size() )
    {
        out.push_back( cur );
        return;
    }
    auto candidates = cur.empty() ? m.initial_states()
                                  : std::vector<StateIndex>( m.successors( cur.back() ).begin(),
                                                             m.successors( cur.back() ).end() );
    for( auto s : candidates )
    {
        if( m.label( s ) != target[ cur.size() ] )
            continue;
        meter.tick();
        cur.push_back( s );
        same_output( m, target, cur, out, meter );
        cur.pop_back();
    }
}

} // namespace

BoundedVerdict check_definition_naive( const Fsm& m, PropertyKind p, DiagParams params, const Horizon& h )
{
    BoundedVerdict v;
    v.horizon = h.length;
    auto setup = prepare( m, p, params, v );
    if( !setup )
        return v;
    const auto& q = setup->params;
    Meter meter( h.budget );
    const auto starts = m.initial_states();
    for( const auto& x : enumerate_executions( m, starts, h.length, h.budget ) )
    {
        meter.tick();
        auto kx = crossing_index( x, m.critical() );
        if( !kx )
            continue;
        for( std::size_t k = *kx; k + q.delta <= h.length; ++k )
        {
            if( !m.is_critical( x[ k - 1 ] ) || k < q.tau + 1 )
                continue;
            if( setup->first_crossing_only && k != *kx )
                break;
            if( setup->first_step_only && k != 1 )
                break;
            std::span<const StateIndex> prefix( x.data(), k + q.delta );
            auto target = output_of( m, prefix );
            std::vector<Execution> partners;
            Execution cur;
            same_output( m, target, cur, partners, meter );
            const std::size_t lo = k > q.gamma1 ? k - q.gamma1 : 1;
            const std::size_t hi = k + q.gamma2;
            for( const auto& xh : partners )
            {
                bool hit = false;
                for( std::size_t t = lo; t <= hi && !hit; ++t )
                    hit = m.is_critical( xh[ t - 1 ] );
                if( !hit )
                {
                    v.outcome = Outcome::violated;
                    v.counterexample = Counterexample{ Execution( prefix.begin(), prefix.end() ), xh, k };
                    return v;
                }
            }
        }
    }
    return v;
}

namespace
{

struct FreeDims
{
    bool tau, delta, gamma1, gamma2;
};

FreeDims free_dims( PropertyKind p )
{
    switch( p )
    {
    case PropertyKind::parametric:
    case PropertyKind::eventual:
        return { true, true, true, true };
    case PropertyKind::diag:
    case PropertyKind::critical:
        return { false, true, true, true };
    case PropertyKind::eventual_obs:
        return { true, false, false, false };
    case PropertyKind::critical_obs:
        return { false, false, false, false };
    case PropertyKind::exact_step:
        return { true, true, false, false };
    case PropertyKind::initial_obs:
        return { false, true, false, false };
    }
    return {};
}

} // namespace

DiagParams probe_params( const Fsm& m, PropertyKind p )
{
    const auto half = m.size() * m.size() / 2;
    auto dims = free_dims( p );
    DiagParams d;
    d.tau = dims.tau ? half : 0;
    d.delta = dims.delta ? half : 0;
    d.gamma1 = dims.gamma1 ? half : 0;
    d.gamma2 = dims.gamma2 ? d.delta : 0;
    return force_params( p, d );
}

std::optional<DiagParams> minimal_params( const Fsm& m, PropertyKind p, const Horizon& h, std::size_t cap )
{
    auto dims = free_dims( p );
    auto ok = [ & ]( DiagParams d ) {
        d.gamma2 = std::min( d.gamma2, d.delta );
        auto longer = h;
        longer.length = h.length + d.tau + d.delta;
        return check_definition( m, p, d, longer ).outcome != Outcome::violated;
    };
    auto top = [ & ]( bool free ) { return free ? cap : 0; };
    DiagParams best;
    best.tau = top( dims.tau );
    best.delta = top( dims.delta );
    best.gamma1 = top( dims.gamma1 );
    best.gamma2 = top( dims.gamma2 );
    if( !ok( best ) )
        return std::nullopt;
    // lexicographic descent; each coordinate is monotone once the earlier
    // ones are fixed
    for( std::size_t* field : { &best.tau, &best.delta, &best.gamma1, &best.gamma2 } )
    {
        const auto hi = *field;
        for( std::size_t v = 0; v < hi; ++v )
        {
            auto trial = best;
            *( &trial.tau + ( field - &best.tau ) ) = v;
            if( ok( trial ) )
            {
                *field = v;
                break;
            }
        }
        best.gamma2 = std::min( best.gamma2, best.delta );
    }
    return force_params( p, best );
}

Fsm random_live_fsm( std::mt19937_64& rng, const RandomFsmOptions& opt )
{
    const auto n = opt.states;
    if( n == 0 || opt.symbols == 0 )
        throw usage_error( "random machine needs at least one state and one symbol" );
    std::uniform_real_distribution<double> coin( 0.0, 1.0 );
    std::uniform_int_distribution<std::size_t> pick_state( 0, n - 1 );
    std::uniform_int_distribution<std::size_t> pick_symbol( 0, opt.symbols - 1 );

    std::vector<std::string> names, symbols;
    for( std::size_t i = 0; i < n; ++i )
        names.push_back( std::to_string( i + 1 ) );
    for( std::size_t s = 0; s < opt.symbols; ++s )
        symbols.push_back( std::string( 1, static_cast<char>( 'a' + s ) ) );
    std::vector<SymbolIndex> labels( n );
    for( auto& l : labels )
        l = static_cast<SymbolIndex>( pick_symbol( rng ) );
    // symbols are numbered by first use, as a parsed file would have them
    std::vector<SymbolIndex> renumber( opt.symbols, -1 );
    std::vector<std::string> used;
    for( auto& l : labels )
    {
        if( renumber[ l ] < 0 )
        {
            renumber[ l ] = static_cast<SymbolIndex>( used.size() );
            used.push_back( symbols[ l ] );
        }
        l = renumber[ l ];
    }

    std::vector<Transition> trans;
    for( StateIndex i = 0; i < n; ++i )
    {
        bool any = false;
        for( StateIndex j = 0; j < n; ++j )
            if( coin( rng ) < opt.edge_probability )
            {
                trans.emplace_back( i, j );
                any = true;
            }
        if( !any )
            trans.emplace_back( i, static_cast<StateIndex>( pick_state( rng ) ) );
    }
    StateMask initial( n ), critical( n );
    bool any_initial = false;
    for( std::size_t i = 0; i < n; ++i )
    {
        initial[ i ] = coin( rng ) < opt.initial_probability;
        any_initial = any_initial || initial[ i ];
        critical[ i ] = coin( rng ) < opt.critical_probability;
    }
    if( !any_initial )
        initial[ pick_state( rng ) ] = true;
    return Fsm( std::move( names ), std::move( used ), std::move( labels ), std::move( trans ), std::move( initial ),
                std::move( critical ) );
}

} // namespace fsmdiag::oracle
