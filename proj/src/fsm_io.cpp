#include "fsmdiag/fsm_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "fsmdiag/errors.hpp"

namespace fsmdiag
{

namespace
{

std::vector<std::string> split_tokens( const std::string& line )
{
    std::istringstream ss( line );
    std::vector<std::string> out;
    std::string tok;
    while( ss >> tok )
        out.push_back( tok );
    return out;
}

} // namespace

Fsm parse_fsm( std::istream& in )
{
    std::vector<std::string> names;
    std::vector<std::string> symbols;
    std::vector<SymbolIndex> labels;
    StateMask initial, critical;
    std::vector<Transition> transitions;
    std::unordered_map<std::string, StateIndex> index;

    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while( std::getline( in, line ) )
    {
        ++lineno;
        if( auto hash = line.find( '#' ); hash != std::string::npos )
            line.erase( hash );
        auto toks = split_tokens( line );
        if( toks.empty() )
            continue;
        if( !header )
        {
            if( toks.size() != 2 || toks[ 0 ] != "fsm" || toks[ 1 ] != "v1" )
                throw parse_error( lineno, "expected header 'fsm v1'" );
            header = true;
            continue;
        }
        if( toks[ 0 ] == "state" )
        {
            if( toks.size() < 3 )
                throw parse_error( lineno, "state needs an id and output=<symbol>" );
            const auto& id = toks[ 1 ];
            if( index.count( id ) )
                throw parse_error( lineno, "duplicate state '" + id + "'" );
            if( toks[ 2 ].rfind( "output=", 0 ) != 0 || toks[ 2 ].size() == 7 )
                throw parse_error( lineno, "expected output=<symbol> for state '" + id + "'" );
            auto sym = toks[ 2 ].substr( 7 );
            SymbolIndex label = silent_symbol;
            if( sym != silent_token )
            {
                auto it = std::find( symbols.begin(), symbols.end(), sym );
                if( it == symbols.end() )
                {
                    symbols.push_back( sym );
                    it = symbols.end() - 1;
                }
                label = static_cast<SymbolIndex>( it - symbols.begin() );
            }
            bool is_init = false, is_crit = false;
            for( std::size_t t = 3; t < toks.size(); ++t )
            {
                if( toks[ t ] == "init" )
                    is_init = true;
                else if( toks[ t ] == "critical" )
                    is_crit = true;
                else
                    throw parse_error( lineno, "unknown state flag '" + toks[ t ] + "'" );
            }
            index.emplace( id, static_cast<StateIndex>( names.size() ) );
            names.push_back( id );
            labels.push_back( label );
            initial.push_back( is_init );
            critical.push_back( is_crit );
        }
        else if( toks[ 0 ] == "trans" )
        {
            if( toks.size() != 3 )
                throw parse_error( lineno, "trans needs exactly two states" );
            auto a = index.find( toks[ 1 ] );
            auto b = index.find( toks[ 2 ] );
            if( a == index.end() )
                throw parse_error( lineno, "undeclared state '" + toks[ 1 ] + "'" );
            if( b == index.end() )
                throw parse_error( lineno, "undeclared state '" + toks[ 2 ] + "'" );
            transitions.emplace_back( a->second, b->second );
        }
        else
            throw parse_error( lineno, "unknown directive '" + toks[ 0 ] + "'" );
    }
    if( !header )
        throw parse_error( std::max<std::size_t>( lineno, 1 ), "missing header 'fsm v1'" );
    return { std::move( names ), std::move( symbols ), std::move( labels ),
             std::move( transitions ), std::move( initial ), std::move( critical ) };
}

Fsm parse_fsm( std::string_view text )
{
    std::istringstream ss{ std::string( text ) };
    return parse_fsm( ss );
}

Fsm load_fsm( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if( !in )
        throw usage_error( "cannot open '" + path.string() + "'" );
    return parse_fsm( in );
}

void write_fsm( std::ostream& out, const Fsm& m )
{
    out << "fsm v1\n";
    for( StateIndex i = 0; i < m.size(); ++i )
    {
        out << "state " << m.name( i ) << " output=" << m.symbol_name( m.label( i ) );
        if( m.is_initial( i ) )
            out << " init";
        if( m.is_critical( i ) )
            out << " critical";
        out << '\n';
    }
    for( auto [ a, b ] : m.transitions() )
        out << "trans " << m.name( a ) << ' ' << m.name( b ) << '\n';
}

std::string to_text( const Fsm& m )
{
    std::ostringstream ss;
    write_fsm( ss, m );
    return ss.str();
}

StateMask parse_state_list( const Fsm& m, std::string_view list )
{
    std::string text( list );
    for( auto& c : text )
        if( c == ',' )
            c = ' ';
    StateMask mask( m.size(), false );
    for( auto& tok : split_tokens( text ) )
        mask[ m.index_of( tok ) ] = true;
    return mask;
}

} // namespace fsmdiag
