#include <string>
#include <vector>

#include "triwalsh/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return triwalsh::cli_run(args);
}
