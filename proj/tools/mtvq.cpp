#include <iostream>

#include <mtvq/cli.hpp>

int main(int argc, char **argv) { return mtvq::cli::run_cli(argc, argv, std::cout, std::cerr); }
