#include "randers/cli.hpp"

int main(int argc, char** argv) { return randers::run_cli(argc, argv); }
