#include <iostream>

#include "rsconn/cli.hpp"

int main(int argc, char** argv) { return rsconn::cli::main_entry(argc, argv, std::cout, std::cerr); }
