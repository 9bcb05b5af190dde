#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return nuds::cli::run(argc, argv, std::cout, std::cerr); }
