// Acceptance runner: criteria 1..10 in process, criterion 11 through the CLI.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "dircheeger/acceptance.hpp"
#include "dircheeger/log.hpp"
#include "dircheeger/report.hpp"

namespace {

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return c;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) c.out.append(buf, got);
  c.status = pclose(pipe.release());
  return c;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char ch : s) {
    if (ch == '\'') q += "'\\''";
    else q += ch;
  }
  return q + "'";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dircheeger acceptance"};
  std::string cli;
  std::uint64_t seed = 20240601;
  int threads = 0;
  app.add_option("--cli", cli, "Path to the dircheeger executable")->required();
  app.add_option("--seed", seed, "Corpus seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  dircheeger::set_warning_sink({});
  dircheeger::AcceptanceOptions options;
  options.seed = seed;
  options.threads = threads;

  bool all = true;
  for (const dircheeger::CriterionOutcome& o : dircheeger::run_acceptance(options)) {
    std::cout << dircheeger::format_outcome(o) << std::endl;
    all = all && o.passed;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::string command = quote(cli) + " selftest --json --seed " + std::to_string(seed) +
                              " --threads " + std::to_string(threads) + " 2>/dev/null";
  const Captured first = capture(command);
  const Captured second = capture(command);
  std::string detail;
  bool ok = false;
  try {
    if (first.status != 0 || second.status != 0) {
      detail = "selftest exited with status " + std::to_string(first.status) + " / " + std::to_string(second.status);
    } else {
      const std::string a = dircheeger::payload(dircheeger::Json::parse(first.out));
      const std::string b = dircheeger::payload(dircheeger::Json::parse(second.out));
      ok = a == b;
      detail = ok ? "payload " + dircheeger::fnv1a_hex(a) + " reproduced" : "payloads differ";
    }
  } catch (const std::exception& e) {
    detail = std::string("unparsable selftest output: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char line[64];
  std::snprintf(line, sizeof line, " (%.2f s): ", seconds);
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "11 determinism" << line << detail << std::endl;
  all = all && ok;

  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
