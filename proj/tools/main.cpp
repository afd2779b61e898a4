#include <iostream>

#include "qsub_cli/app.hpp"

int main(int argc, char** argv) { return qsub::cli::run_cli(argc, argv, std::cout, std::cerr); }
