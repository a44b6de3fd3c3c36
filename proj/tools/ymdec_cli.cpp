#include <iostream>

#include "ymdec/cli.hpp"

int main(int argc, char** argv) { return ymdec::cli::run_cli(argc, argv, std::cout, std::cerr); }
