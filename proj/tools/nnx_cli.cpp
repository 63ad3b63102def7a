#include <iostream>

#include "nnx/cli.hpp"

int main(int argc, char** argv)
{
    return nnx::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
