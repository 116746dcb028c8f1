#include <cstdlib>
#include <iostream>
#include <unistd.h>

#include "cr3/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const bool color = isatty(STDOUT_FILENO) && !std::getenv("NO_COLOR");
    return cr3::cli::run(args, std::cout, std::cerr, color);
}
