#include <atomic>
#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;

extern "C" void on_sigint(int) { g_stop = 1; }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  std::vector<std::string> args(argv + 1, argv + argc);
  return tocq::cli::run(args, std::cout, std::cerr, [] { return g_stop != 0; });
}
