#include <iostream>

#include "heegner_cli/cli.hpp"

int main(int argc, char** argv) { return heegner::cli::run(argc, argv, std::cout, std::cerr); }
