#include "cli.hh"

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    return sidorenko::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
