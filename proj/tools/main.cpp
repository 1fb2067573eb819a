#include <iostream>

#include "stormlet/cli/Cli.h"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return stormlet::cli::runMain(args, std::cout, std::cerr);
}
