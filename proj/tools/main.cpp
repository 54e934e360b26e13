#include <iostream>

#include "spinrelay/cli.hpp"

int main(int argc, char** argv) { return spinrelay::run_cli(argc, argv, std::cout, std::cerr); }
