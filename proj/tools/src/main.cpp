#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return vmolab::cli::run(argc, argv, std::cout, std::cerr); }
