#include "gsbq/cli.hpp"

int main(int argc, char** argv) { return gsbq::cli_main(argc, argv); }
