#include <iostream>

#include "hyplane/cli.hpp"

int main(int argc, char** argv)
{
    return hyplane::run_cli(argc, argv, std::cout, std::cerr);
}
