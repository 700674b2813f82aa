#include "holext/cli.hpp"

int main(int argc, char** argv) { return holext::run_cli(argc, argv); }
