#include "fsmdiag/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fsmdiag/checker.hpp"
#include "fsmdiag/diagnoser.hpp"
#include "fsmdiag/epsremoval.hpp"
#include "fsmdiag/errors.hpp"
#include "fsmdiag/fixpoint.hpp"
#include "fsmdiag/fsm_io.hpp"
#include "fsmdiag/oracle.hpp"

namespace fsmdiag::cli
{

namespace
{

using json = nlohmann::ordered_json;

struct Common
{
    std::string file;
    std::string initial;
    std::string critical;
    bool json = false;
};

void add_common( CLI::App* app, Common& c )
{
    app->add_option( "file", c.file, "model file" )->required();
    app->add_option( "--initial", c.initial, "override X0 (comma separated states, or 'all')" );
    app->add_option( "--critical", c.critical, "override the critical set (comma separated states)" );
    app->add_flag( "--json", c.json, "machine readable output" );
}

StateMask state_list( const Fsm& m, const std::string& list )
{
    if( list == "all" )
        return StateMask( m.size(), true );
    return parse_state_list( m, list );
}

Fsm load( const Common& c )
{
    auto m = load_fsm( c.file );
    if( !c.initial.empty() )
        m = m.with_initial( state_list( m, c.initial ) );
    if( !c.critical.empty() )
        m = m.with_critical( state_list( m, c.critical ) );
    return m;
}

std::string params_text( const DiagParams& p )
{
    std::ostringstream s;
    s << "tau=" << p.tau << " delta=" << p.delta << " T=" << ( p.horizon_infinite ? "inf" : "0" )
      << " gamma1=" << p.gamma1 << " gamma2=" << p.gamma2;
    return s.str();
}

json params_json( const DiagParams& p )
{
    return json{ { "tau", p.tau },
                 { "delta", p.delta },
                 { "T", p.horizon_infinite ? "inf" : "0" },
                 { "gamma1", p.gamma1 },
                 { "gamma2", p.gamma2 } };
}

json pairs_json( const Fsm& m, const PairRelation& r )
{
    json a = json::array();
    for( auto [ i, j ] : r.pairs() )
        a.push_back( json::array( { m.name( i ), m.name( j ) } ) );
    return a;
}

json states_json( const Fsm& m, const StateMask& mask )
{
    json a = json::array();
    for( auto i : mask_to_states( mask ) )
        a.push_back( m.name( i ) );
    return a;
}

std::string states_text( const Fsm& m, const StateMask& mask )
{
    std::string s = "{";
    bool first = true;
    for( auto i : mask_to_states( mask ) )
    {
        if( !first )
            s += ",";
        first = false;
        s += m.name( i );
    }
    return s + "}";
}

std::string execution_text( const Fsm& m, const Execution& x )
{
    std::string s;
    for( auto i : x )
        s += ( s.empty() ? "" : " " ) + m.name( i );
    return s;
}

void emit( std::ostream& out, json report, std::chrono::steady_clock::time_point start )
{
    const auto elapsed = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start );
    report[ "elapsed_ms" ] = elapsed.count();
    report[ "version" ] = std::string( version );
    out << report.dump( 2 ) << "\n";
}

int cmd_validate( const Common& c, const std::string& mode_name, std::ostream& out,
                  std::chrono::steady_clock::time_point start )
{
    ValidationMode mode;
    if( mode_name == "analysis" )
        mode = ValidationMode::analysis;
    else if( mode_name == "desilent" )
        mode = ValidationMode::desilent;
    else
        throw usage_error( "unknown mode '" + mode_name + "'" );
    const auto m = load( c );
    const auto report = validate( m, mode );
    if( c.json )
    {
        json v = json::array();
        for( const auto& x : report.violations )
        {
            json states = json::array();
            for( auto i : x.states )
                states.push_back( m.name( i ) );
            v.push_back( { { "kind", std::string( to_string( x.kind ) ) }, { "states", states }, { "message", x.message } } );
        }
        emit( out, { { "command", "validate" }, { "mode", mode_name }, { "valid", report.ok() }, { "violations", v } },
              start );
    }
    else if( report.ok() )
        out << "valid (" << mode_name << ")\n";
    else
        for( const auto& x : report.violations )
            out << "violation " << to_string( x.kind ) << ": " << x.message << "\n";
    return report.ok() ? exit_ok : exit_fails;
}

int cmd_sets( const Common& c, const std::string& which, bool steps, std::ostream& out,
              std::chrono::steady_clock::time_point start )
{
    const auto m = load( c );
    const Analysis a( m );
    const std::vector<std::pair<std::string, const FixpointSeries*>> all{
        { "S", &a.s() },      { "Stilde", &a.s_tilde() },      { "F", &a.f() },
        { "B", &a.b() },      { "Lambda", &a.lambda().mixed }, { "Gamma", &a.gamma().mixed },
    };
    std::vector<std::pair<std::string, const FixpointSeries*>> chosen;
    for( const auto& e : all )
        if( which.empty() || which == e.first )
            chosen.push_back( e );
    if( chosen.empty() )
        throw usage_error( "unknown set '" + which + "'" );
    if( c.json )
    {
        json sets = json::object();
        for( const auto& [ name, s ] : chosen )
        {
            json e{ { "fixed_point", pairs_json( m, s->fixed_point() ) },
                    { "convergence_step", s->convergence_step },
                    { "emptied_at", s->emptied_at ? json( *s->emptied_at ) : json( nullptr ) } };
            if( steps )
            {
                json st = json::array();
                for( const auto& r : s->steps )
                    st.push_back( pairs_json( m, r ) );
                e[ "steps" ] = st;
            }
            sets[ name ] = e;
        }
        emit( out, { { "command", "sets" }, { "sets", sets } }, start );
        return exit_ok;
    }
    for( const auto& [ name, s ] : chosen )
    {
        if( steps )
            for( std::size_t k = 0; k < s->steps.size(); ++k )
                out << name << "_" << k + 1 << " = " << format_pairs( m, s->steps[ k ] ) << "\n";
        out << name << "* = " << format_pairs( m, s->fixed_point() ) << "\n";
        out << name << " converges at step " << s->convergence_step;
        if( s->emptied_at )
            out << " (empty from step " << *s->emptied_at << ")";
        out << "\n";
    }
    return exit_ok;
}

json verdict_json( const Fsm& m, const DiagVerdict& v )
{
    json r{ { "property", std::string( to_string( v.property ) ) }, { "holds", v.holds } };
    r[ "params" ] = v.params ? params_json( *v.params ) : json( nullptr );
    json f = json::array();
    for( const auto& t : v.frontier )
        f.push_back( json::array( { t.b, t.f, t.g, t.l } ) );
    r[ "frontier" ] = f;
    r[ "chosen" ] = v.chosen ? json::array( { v.chosen->b, v.chosen->f, v.chosen->g, v.chosen->l } ) : json( nullptr );
    r[ "witness" ] = v.witness ? json{ { "pair", json::array( { m.name( v.witness->pair.first ),
                                                                m.name( v.witness->pair.second ) } ) },
                                       { "relation", v.witness->relation } }
                               : json( nullptr );
    return r;
}

int cmd_check( const Common& c, const std::string& property, std::ostream& out,
               std::chrono::steady_clock::time_point start )
{
    const auto p = parse_property( property );
    const auto m = load( c );
    const Analysis a( m );
    const auto v = check( a, p );
    if( c.json )
    {
        auto r = verdict_json( m, v );
        r[ "command" ] = "check";
        emit( out, r, start );
    }
    else
    {
        out << "property: " << to_string( p ) << "\n";
        out << "holds: " << ( v.holds ? "true" : "false" ) << "\n";
        if( v.params )
            out << "params: " << params_text( *v.params ) << "\n";
        if( v.chosen )
            out << "chosen: (b,f,g,l)=(" << v.chosen->b << "," << v.chosen->f << "," << v.chosen->g << ","
                << v.chosen->l << ")\n";
        if( !v.frontier.empty() )
        {
            out << "frontier:";
            for( const auto& t : v.frontier )
                out << " (" << t.b << "," << t.f << "," << t.g << "," << t.l << ")";
            out << "\n";
        }
        if( v.witness )
            out << "witness: (" << m.name( v.witness->pair.first ) << "," << m.name( v.witness->pair.second )
                << ") in " << v.witness->relation << "\n";
    }
    return v.holds ? exit_ok : exit_fails;
}

int cmd_desilent( const Common& c, const std::string& output, const std::string& provenance, std::ostream& out,
                  std::chrono::steady_clock::time_point start )
{
    const auto m = load( c );
    const auto r = desilent( m );
    if( !provenance.empty() )
    {
        json p = json::object();
        for( const auto& [ name, o ] : r.provenance )
            p[ name ] = { { "q", o.q }, { "w", o.w }, { "crossed", o.crossed } };
        std::ofstream f( provenance );
        if( !f )
            throw usage_error( "cannot write '" + provenance + "'" );
        f << p.dump( 2 ) << "\n";
    }
    if( output.empty() )
    {
        write_fsm( out, r.m_hat );
        return exit_ok;
    }
    std::ofstream f( output );
    if( !f )
        throw usage_error( "cannot write '" + output + "'" );
    write_fsm( f, r.m_hat );
    if( c.json )
        emit( out,
              { { "command", "desilent" },
                { "states", r.m_hat.names() },
                { "critical", states_json( r.m_hat, r.m_hat.critical() ) },
                { "output", output } },
              start );
    else
        out << "wrote " << r.m_hat.size() << " states to " << output << ", critical "
            << states_text( r.m_hat, r.m_hat.critical() ) << "\n";
    return exit_ok;
}

std::vector<std::string> read_symbols( const std::string& trace, std::istream& in, bool from_trace )
{
    std::vector<std::string> out;
    if( from_trace )
    {
        std::istringstream s( trace );
        for( std::string t; s >> t; )
            out.push_back( t );
        return out;
    }
    for( std::string line; std::getline( in, line ); )
    {
        std::istringstream s( line );
        for( std::string t; s >> t; )
            out.push_back( t );
    }
    return out;
}

int cmd_observe( const Common& c, const std::string& property, const std::string& trace, bool from_trace,
                 std::istream& in, std::ostream& out, std::chrono::steady_clock::time_point start )
{
    const auto p = parse_property( property );
    const auto m = load( c );
    const auto v = check( Analysis( m ), p );
    Diagnoser d( m, v );
    json events = json::array();
    for( const auto& sym : read_symbols( trace, in, from_trace ) )
        if( auto e = d.step( sym ) )
        {
            if( c.json )
                events.push_back(
                        { { "step", e->detected_at }, { "window", json::array( { e->lo, e->hi } ) }, { "exact", e->exact } } );
            else
                out << "EVENT step=" << e->detected_at << " window=[" << e->lo << "," << e->hi
                    << "] exact=" << ( e->exact ? "true" : "false" ) << "\n";
        }
    if( c.json )
        emit( out,
              { { "command", "observe" },
                { "property", property },
                { "params", params_json( d.params() ) },
                { "steps", d.steps() },
                { "estimate_step", d.estimate_step() },
                { "estimate", d.steps() ? states_json( m, d.current_estimate() ) : json::array() },
                { "events", events } },
              start );
    return exit_ok;
}

DiagParams parse_params( const std::string& text )
{
    std::vector<std::size_t> v;
    std::string t = text;
    std::replace( t.begin(), t.end(), ',', ' ' );
    std::istringstream s( t );
    for( std::string tok; s >> tok; )
    {
        if( tok.empty() || !std::all_of( tok.begin(), tok.end(), []( char ch ) { return ch >= '0' && ch <= '9'; } ) )
            throw usage_error( "parameters must be four non negative integers" );
        v.push_back( std::stoul( tok ) );
    }
    if( v.size() != 4 )
        throw usage_error( "--params needs tau,delta,gamma1,gamma2" );
    DiagParams p;
    p.tau = v[ 0 ];
    p.delta = v[ 1 ];
    p.gamma1 = v[ 2 ];
    p.gamma2 = v[ 3 ];
    return p;
}

int cmd_oracle( const Common& c, const std::string& property, std::size_t horizon, const std::string& params,
                bool minimal, std::ostream& out, std::chrono::steady_clock::time_point start )
{
    const auto p = parse_property( property );
    const auto m = load( c );
    oracle::Horizon h;
    h.length = horizon;
    if( minimal )
    {
        const auto best = oracle::minimal_params( m, p, h, m.size() * m.size() );
        if( c.json )
            emit( out,
                  { { "command", "oracle" },
                    { "property", property },
                    { "horizon", horizon },
                    { "minimal", best ? params_json( *best ) : json( nullptr ) } },
                  start );
        else if( best )
            out << "minimal params up to horizon " << horizon << ": " << params_text( *best ) << "\n";
        else
            out << "no parameters up to " << m.size() * m.size() << " satisfy the property up to horizon " << horizon
                << "\n";
        return best ? exit_ok : exit_fails;
    }
    DiagParams given;
    if( !params.empty() )
        given = parse_params( params );
    else
    {
        const auto v = check( Analysis( m ), p );
        given = v.params ? *v.params : oracle::probe_params( m, p );
    }
    const auto v = oracle::check_definition( m, p, given, h );
    if( c.json )
    {
        json r{ { "command", "oracle" },
                { "property", property },
                { "params", params_json( v.params ) },
                { "horizon", horizon },
                { "outcome", std::string( oracle::to_string( v.outcome ) ) } };
        if( v.counterexample )
        {
            json x = json::array(), xh = json::array();
            for( auto i : v.counterexample->x )
                x.push_back( m.name( i ) );
            for( auto i : v.counterexample->x_hat )
                xh.push_back( m.name( i ) );
            r[ "counterexample" ] = { { "x", x }, { "x_hat", xh }, { "crossing", v.counterexample->crossing_step } };
        }
        if( !v.note.empty() )
            r[ "note" ] = v.note;
        emit( out, r, start );
    }
    else
    {
        out << "property: " << property << "\n";
        out << "params: " << params_text( v.params ) << "\n";
        out << "horizon: " << horizon << "\n";
        out << "outcome: " << oracle::to_string( v.outcome ) << "\n";
        if( v.counterexample )
        {
            out << "x: " << execution_text( m, v.counterexample->x ) << "\n";
            out << "x_hat: " << execution_text( m, v.counterexample->x_hat ) << "\n";
            out << "crossing: " << v.counterexample->crossing_step << "\n";
        }
        if( !v.note.empty() )
            out << "note: " << v.note << "\n";
    }
    return v.outcome == oracle::Outcome::violated ? exit_fails : exit_ok;
}

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in )
{
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{ "Observability and diagnosability of finite state machines", "fsmdiag" };
    app.require_subcommand( 1 );
    app.set_version_flag( "--version", std::string( version ) );

    Common vc, sc, cc, dc, oc, rc;
    std::string mode = "analysis", set, property, output, provenance, trace, params;
    bool steps = false, minimal = false;
    std::size_t horizon = 0;

    auto* validate_cmd = app.add_subcommand( "validate", "check the standing assumptions" );
    add_common( validate_cmd, vc );
    validate_cmd->add_option( "--mode", mode, "analysis or desilent" );

    auto* sets_cmd = app.add_subcommand( "sets", "print the relation fixed points" );
    add_common( sets_cmd, sc );
    sets_cmd->add_option( "--set", set, "S, Stilde, F, B, Lambda or Gamma" );
    sets_cmd->add_flag( "--steps", steps, "print every step of the recursion" );

    auto* check_cmd = app.add_subcommand( "check", "decide a property and extract its parameters" );
    add_common( check_cmd, cc );
    check_cmd->add_option( "--property", property, "property kind" )->required();

    auto* desilent_cmd = app.add_subcommand( "desilent", "remove silent states" );
    add_common( desilent_cmd, dc );
    desilent_cmd->add_option( "-o,--output", output, "output model file" );
    desilent_cmd->add_option( "--provenance", provenance, "write the origin of new states as JSON" );

    auto* observe_cmd = app.add_subcommand( "observe", "run the online diagnoser" );
    add_common( observe_cmd, oc );
    observe_cmd->add_option( "--property", property, "property kind" )->required();
    auto* trace_opt = observe_cmd->add_option( "--trace", trace, "whitespace separated output symbols" );

    auto* oracle_cmd = app.add_subcommand( "oracle", "bounded check of a property's definition" );
    add_common( oracle_cmd, rc );
    oracle_cmd->add_option( "--property", property, "property kind" )->required();
    oracle_cmd->add_option( "--horizon", horizon, "maximal execution length" )->required()->check( CLI::PositiveNumber );
    oracle_cmd->add_option( "--params", params, "tau,delta,gamma1,gamma2" );
    oracle_cmd->add_flag( "--minimal", minimal, "search the smallest parameters instead" );

    try
    {
        std::vector<std::string> reversed( args.rbegin(), args.rend() );
        app.parse( std::move( reversed ) );
    }
    catch( const CLI::CallForHelp& )
    {
        out << app.help();
        return exit_ok;
    }
    catch( const CLI::CallForAllHelp& )
    {
        out << app.help( "", CLI::AppFormatMode::All );
        return exit_ok;
    }
    catch( const CLI::CallForVersion& )
    {
        out << version << "\n";
        return exit_ok;
    }
    catch( const CLI::ParseError& e )
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try
    {
        if( validate_cmd->parsed() )
            return cmd_validate( vc, mode, out, start );
        if( sets_cmd->parsed() )
            return cmd_sets( sc, set, steps, out, start );
        if( check_cmd->parsed() )
            return cmd_check( cc, property, out, start );
        if( desilent_cmd->parsed() )
            return cmd_desilent( dc, output, provenance, out, start );
        if( observe_cmd->parsed() )
            return cmd_observe( oc, property, trace, trace_opt->count() > 0, in, out, start );
        if( oracle_cmd->parsed() )
            return cmd_oracle( rc, property, horizon, params, minimal, out, start );
    }
    catch( const resource_error& e )
    {
        err << "error: " << e.what() << "\n";
        return exit_resource;
    }
    catch( const parse_error& e )
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch( const std::exception& e )
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace fsmdiag::cli
