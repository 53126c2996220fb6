#include <planch/cli.hpp>

int main(int argc, char** argv) { return planch::run_cli(argc, argv); }
