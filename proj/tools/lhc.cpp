#include "lhc/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return lhc::cli::run(argc, argv, std::cout, std::cerr);
}
