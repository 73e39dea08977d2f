#include <iostream>

#include "seshadri/cli.hpp"

int main(int argc, char** argv)
{
    return seshadri::cli::run(argc, argv, std::cout, std::cerr);
}
