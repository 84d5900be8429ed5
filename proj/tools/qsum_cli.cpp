#include <iostream>
#include <string>
#include <vector>

#include "qsum/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qsum::dispatch(args, std::cout, std::cerr);
}
