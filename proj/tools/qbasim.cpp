#include <iostream>

#include "qbasim/cli.hpp"

int main(int argc, char** argv) { return qbasim::cli::run(argc, argv, std::cout, std::cerr); }
