#include <iostream>

#include "caccsim/cli.hpp"

int main(int argc, char** argv) { return caccsim::run_cli(argc, argv, std::cout, std::cerr); }
