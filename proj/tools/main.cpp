#include "cli.hpp"

int main(int argc, char** argv) { return stochtrend::cli::run(argc, argv); }
