#include <iostream>
#include <string>
#include <vector>

#include "ccb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ccb::run_cli(args, std::cout, std::cerr);
}
