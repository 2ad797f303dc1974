#include "firecluster/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return firecluster::cli_main(argc, argv, std::cout, std::cerr); }
