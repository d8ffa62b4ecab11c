#include <iostream>

#include "qsk/cli.hpp"

int main(int argc, char** argv) { return qsk::cli::run(argc, argv, std::cout, std::cerr); }
