#include "cli.hpp"

int main(int argc, char** argv) { return qpartial::cli::run_main(argc, argv); }
