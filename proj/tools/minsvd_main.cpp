#include "minsvd/cli.hpp"

int main(int argc, char** argv) { return minsvd::run_cli(argc, argv); }
