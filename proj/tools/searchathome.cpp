#include <atomic>
#include <csignal>

#include "searchathome/harness/cli.hpp"

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::signal(SIGPIPE, SIG_IGN);
  searchathome::harness::CliContext ctx;
  ctx.stop = &g_stop;
  return searchathome::harness::run_cli(argc, argv, ctx);
}
