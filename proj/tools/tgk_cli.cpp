#include <iostream>

#include "tgk/cli.hpp"

int main(int argc, char** argv) { return tgk::run(argc, argv, std::cout, std::cerr); }
