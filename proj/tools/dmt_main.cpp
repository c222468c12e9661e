#include "dmt/io.hpp"

int main(int argc, char** argv) { return dmt::run_cli(argc, argv); }
