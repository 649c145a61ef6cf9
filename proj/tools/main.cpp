#include <iostream>

#include "tprep/cli.hpp"

int main(int argc, char** argv) { return tprep::cli::run(argc, argv, std::cout, std::cerr); }
