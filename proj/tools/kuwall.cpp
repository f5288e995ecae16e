#include <iostream>

#include "kuwall/cli.hpp"

int main(int argc, char** argv) { return kuwall::run_cli(argc, argv, std::cout, std::cerr); }
