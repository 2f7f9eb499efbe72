#include <iostream>

#include "traverse/cli_app.hpp"

int main(int argc, char** argv) {
    return traverse::run_cli(argc, argv, std::cout, std::cerr);
}
