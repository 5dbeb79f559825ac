#include <iostream>

#include "interrater/cli.hpp"

int main(int argc, char** argv) {
    return interrater::main_entry(argc, argv, std::cout, std::cerr);
}
