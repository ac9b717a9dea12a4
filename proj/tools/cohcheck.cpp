#include <iostream>

#include "cohcheck/cli.h"

int main(int argc, char** argv) { return cohcheck::run_cli(argc, argv, std::cout, std::cerr); }
