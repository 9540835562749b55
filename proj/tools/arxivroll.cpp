#include <csignal>
#include <iostream>

#include "arxivroll/cli/cli.hpp"

namespace {

extern "C" void on_sigint(int) {
  arxivroll::cli::interrupt_flag().store(true);
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  std::vector<std::string> args(argv + 1, argv + argc);
  return arxivroll::cli::run(args, std::cout, std::cerr);
}
