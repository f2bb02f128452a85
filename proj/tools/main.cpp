#include <iostream>

#include "stklein/cli.hpp"

int main(int argc, char** argv) {
    return stklein::cli_dispatch(argc, argv, std::cout, std::cerr);
}
