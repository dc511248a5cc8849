#include <iostream>

#include "wienerwave/cli.hpp"

int main(int argc, char** argv) { return ww::cli_main(argc, argv, std::cout, std::cerr); }
