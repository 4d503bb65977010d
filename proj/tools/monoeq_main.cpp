#include "monoeq/cli.hpp"

int main(int argc, char** argv) { return monoeq::run_cli(argc, argv); }
