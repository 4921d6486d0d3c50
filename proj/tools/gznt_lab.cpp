#include <iostream>

#include "gznt/cli.hpp"

int main(int argc, char** argv) { return gznt::run(argc, argv, std::cout, std::cerr); }
