#include "cli.hpp"

int main(int argc, char** argv) { return investornet::cli::run(argc, argv); }
