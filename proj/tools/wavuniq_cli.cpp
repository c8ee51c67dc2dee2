#include <iostream>
#include <string>
#include <vector>

#include "wavuniq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return wavuniq::cli::run_cli(args, std::cout, std::cerr);
}
