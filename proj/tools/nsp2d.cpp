#include "nsp2d/cli.hpp"

int main(int argc, char** argv) { return nsp2d::run_cli(argc, argv); }
