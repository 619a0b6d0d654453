#include <vector>

#include "valfan/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return valfan::run_cli(args);
}
