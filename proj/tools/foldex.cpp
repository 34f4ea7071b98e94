#include "foldex/cli.hpp"

int main(int argc, char** argv) { return foldex::cli::run(argc, argv); }
