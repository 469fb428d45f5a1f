#include "ghcwave/cli.hpp"

int main(int argc, char** argv) { return ghcwave::main_entry(argc, argv); }
