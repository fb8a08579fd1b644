#include "selfforce/cli.hpp"

int main(int argc, char** argv) { return selfforce::cli::run(argc, argv); }
