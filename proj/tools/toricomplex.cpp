#include "toricomplex/cli.hpp"

int main(int argc, char** argv) { return toricomplex::cli::run(argc, argv); }
