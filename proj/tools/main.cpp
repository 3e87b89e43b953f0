#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return fhmdp::cli::run(argc, argv, std::cout, std::cerr); }
