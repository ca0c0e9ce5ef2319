#include <iostream>

#include "qde/cli.hpp"

int main(int argc, char ** argv)
{
    return qde::cli::run(argc, argv, std::cout, std::cerr);
}
