#include "sa/cli.hpp"

int main(int argc, char** argv) { return sa::run_cli(argc, argv); }
