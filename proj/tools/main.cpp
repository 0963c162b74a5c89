#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return cdia::cli::run(argc, argv, std::cout, std::cerr); }
