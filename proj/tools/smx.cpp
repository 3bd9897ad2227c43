#include <iostream>

#include "smx_cli.hpp"

int main(int argc, char** argv) { return smx::cli::run_cli(argc, argv, std::cout, std::cerr); }
