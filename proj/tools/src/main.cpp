#include "seirs_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return seirs::cli::main_entry(argc, argv, std::cout, std::cerr);
}
