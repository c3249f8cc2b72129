#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return emknot::cli::main_entry(argc, argv, std::cerr); }
