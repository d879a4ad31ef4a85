#include "bireg/cli.hpp"

int main(int argc, char** argv) { return bireg::run_cli(argc, argv); }
