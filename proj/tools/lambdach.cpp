#include <iostream>

#include "lambdach/cli.hpp"

int main(int argc, char** argv) { return lambdach::cli::run(argc, argv, std::cout, std::cerr); }
