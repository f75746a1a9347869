#include <iostream>

#include "robincap/cli.hpp"

int main(int argc, char** argv) { return robincap::runCli(argc, argv, std::cout, std::cerr); }
