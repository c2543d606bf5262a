#include <cstdio>
#include <cstdlib>

#include "cliquet_cli/validation.hpp"

int main(int argc, char** argv) {
  cliquet::cli::ValidationOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  cliquet::cli::run_validation(opt, [&](const cliquet::cli::CheckResult& r) {
    std::printf("%s\n", cliquet::cli::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d of %zu criteria failed\n", failed, cliquet::cli::validation_checks().size());
  return failed == 0 ? 0 : 1;
}
