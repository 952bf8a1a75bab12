#include <iostream>

#include "pcnres/cli.hpp"

int main(int argc, char** argv) { return pcnres::cli::run(argc, argv, std::cerr); }
