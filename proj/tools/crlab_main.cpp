#include "crlab/cli.hpp"

int main(int argc, char** argv) { return crlab::main_entry(argc, argv); }
