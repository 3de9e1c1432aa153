#include <iostream>

#include "rszeta/cli/cli.hpp"

int main(int argc, char** argv) { return rszeta::cli::run(argc, argv, std::cout, std::cerr); }
