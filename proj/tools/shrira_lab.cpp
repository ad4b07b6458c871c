#include "shrira/cli.hpp"

int main(int argc, char** argv) { return shrira::cli::run(argc, argv); }
