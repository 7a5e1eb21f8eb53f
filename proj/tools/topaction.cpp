#include <iostream>
#include <string>
#include <vector>

#include "topaction/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return topaction::run(args, std::cout, std::cerr);
}
