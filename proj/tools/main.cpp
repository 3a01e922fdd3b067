#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qsa::cli::run_cli(argc, argv, std::cout, std::cerr); }
