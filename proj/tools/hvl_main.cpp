#include <iostream>

#include "hvl/cli.hpp"

int main(int argc, char** argv) { return hvl::cli::main_entry(argc, argv, std::cout, std::cerr); }
