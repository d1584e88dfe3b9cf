#include <wpb/cli.hpp>

int main(int argc, char** argv) { return wpb::cli::run(argc, argv); }
