#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return kdvtau::tools::run_cli(argc, argv, std::cout, std::cerr); }
