#include <iostream>

#include "kmslices/cli.hpp"

int main(int argc, char **argv)
{
    return kms::cli::run(argc, argv, std::cout, std::cerr);
}
