#include <iostream>

#include "qineq/cli.hpp"

int main(int argc, char** argv) { return qineq::run_cli(argc, argv, std::cout, std::cerr); }
