#include <iostream>
#include <string>
#include <vector>

#include "ramanujan/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ramanujan::cli::run(args, std::cout, std::cerr);
}
