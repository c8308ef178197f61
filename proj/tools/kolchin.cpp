#include <iostream>

#include "kolchin/cli.hpp"

int main(int argc, char** argv) { return kolchin::cli::main(argc, argv, std::cout); }
