#include "threadkit/cli.hpp"

int main(int argc, char** argv) { return threadkit::cli(argc, argv); }
