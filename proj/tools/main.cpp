#include <iostream>

#include "ellseq/cli.hpp"

int main(int argc, char** argv) {
    return ellseq::cli_main(argc, argv, std::cout, std::cerr);
}
