#include "udw/cli.hpp"

int main(int argc, char** argv) { return udw::cli::run(argc, argv); }
