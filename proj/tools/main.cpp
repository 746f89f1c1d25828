#include "lsfem/cli.hpp"

int main(int argc, char** argv) { return lsfem::run_cli(argc, argv); }
