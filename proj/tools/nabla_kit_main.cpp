#include "nabla_kit/cli.hpp"

int main(int argc, char** argv) { return nabla_kit::cli::main_entry(argc, argv); }
