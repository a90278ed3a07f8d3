#include "natspec/cli.hpp"

int main(int argc, char** argv) { return natspec::run_command(argc, argv); }
