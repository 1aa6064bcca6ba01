#include <iostream>

#include "sdvrp/cli.hpp"

int main(int argc, char **argv) {
    return sdvrp::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
