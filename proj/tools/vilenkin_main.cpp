#include "vilenkin/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return vilenkin::cli::run(argc, argv, std::cout, std::cerr);
}
