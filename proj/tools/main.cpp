#include <iostream>

#include "masterfield/cli.hpp"

int main(int argc, char** argv) { return mf::run_cli(argc, argv, std::cout, std::cerr); }
