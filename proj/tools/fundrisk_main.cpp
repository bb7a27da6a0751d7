#include "fundrisk/cli.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    try {
        return fundrisk::run_cli(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
