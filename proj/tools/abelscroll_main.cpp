#include <iostream>

#include "abelscroll/cli_reports.hpp"

int main(int argc, char** argv) {
  return abelscroll::run_cli(argc, argv, std::cout, std::cerr);
}
