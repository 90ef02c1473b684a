#include "congestion/cli.hpp"

int main(int argc, char** argv) { return congestion::run_cli(argc, argv); }
