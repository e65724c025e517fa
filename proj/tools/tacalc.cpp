#include "tacalc/cli.hpp"

int main(int argc, char** argv) { return tacalc::run_cli(argc, argv, std::cout, std::cerr); }
