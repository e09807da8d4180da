#include "bootperc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return bootperc::run_cli(argc, argv, std::cout, std::cerr);
}
