#include <iostream>
#include <string>
#include <vector>

#include "cpic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cpic::run(args, std::cout, std::cerr);
}
