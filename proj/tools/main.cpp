#include "spanner/cli.hpp"

int main(int argc, char** argv) { return spanner::run_cli(argc, argv); }
