#include "jtugms/cli.hpp"

int main(int argc, char** argv) { return jtugms::cli::run(argc, argv); }
