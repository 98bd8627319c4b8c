#include <iostream>

#include "pkc/cli.hpp"

int main(int argc, char** argv) { return pkc::cli::run(argc, argv, std::cout, std::cerr); }
