#include <iostream>

#include "crl/cli.hpp"

int main(int argc, char** argv) { return crl::cli::run(argc, argv, std::cout, std::cerr); }
