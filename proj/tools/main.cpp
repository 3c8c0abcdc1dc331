#include <iostream>

#include "sievelab/cli.hpp"

int main(int argc, char** argv) {
    return sievelab::run_cli(argc, argv, std::cout, std::cerr);
}
