#include "liecomm/cli.hpp"

int main(int argc, char** argv) { return liecomm::cli::run(argc, argv); }
