#include <iostream>
#include <string>
#include <vector>

#include "slowfast_cli/commands.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return slowfast::cli::run_main(args, std::cout, std::cerr);
}
