#include "certgamma/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return certgamma::run_cli(argc, argv, std::cout, std::cerr); }
