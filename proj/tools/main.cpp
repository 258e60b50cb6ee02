#include "nearcurve/cli.hpp"

int main(int argc, char** argv) { return nearcurve::run_cli(argc, argv); }
