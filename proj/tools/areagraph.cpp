#include <iostream>

#include "areagraph/cli.hpp"

int main(int argc, char** argv) { return areagraph::run_cli(argc, argv, std::cout, std::cerr); }
