#include <iostream>

#include "fsmdiag/cli.hpp"

int main( int argc, char** argv )
{
    std::vector<std::string> args( argv + 1, argv + argc );
    return fsmdiag::cli::run( args, std::cout, std::cerr, std::cin );
}
