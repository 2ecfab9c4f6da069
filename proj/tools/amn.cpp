#include "amn/cli.hpp"

int main(int argc, char** argv) { return amn::cli::run(argc, argv); }
