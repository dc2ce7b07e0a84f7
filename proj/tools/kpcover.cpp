#include "kpcover/cli.hpp"

int main(int argc, char** argv) { return kpc::cli::main_entry(argc, argv); }
