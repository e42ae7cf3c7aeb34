#include "onnham/cli.hpp"

int main(int argc, char** argv) { return onnham::run_cli(argc, argv); }
