#include "commands.hpp"

int main(int argc, char** argv) { return dpi::cli::main(argc, argv); }
