#include <iostream>

#include "fairb/dsl/cli.hpp"

int main(int argc, char** argv) { return fairb::dsl::run_cli(argc, argv, std::cout, std::cerr); }
