#include <iostream>

#include "framedrep/cli.hpp"

int main(int argc, char** argv) { return framedrep::cli::run(argc, argv, std::cout, std::cerr); }
