#include "cli.hpp"

int main(int argc, char** argv) { return zmc::cli::run(argc, argv); }
