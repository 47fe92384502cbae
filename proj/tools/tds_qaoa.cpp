#include <iostream>

#include "tdsqaoa/cli.hpp"

int main(int argc, char** argv) { return tdsqaoa::cli_entry(argc, argv, std::cout, std::cerr); }
