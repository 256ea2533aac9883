#include <iostream>

#include "allee/cli.hpp"

int main(int argc, char** argv)
{
    return allee::run_cli(argc, argv, std::cout, std::cerr);
}
