#include "gfde/cli.hpp"

int main(int argc, char** argv) { return gfde::cli::run_main(argc, argv); }
