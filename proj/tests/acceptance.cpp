#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "modaldoc/suite.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;

// Wall-clock limits in seconds; criteria without a stated budget are unbounded.
const std::map<int, double> kTimeLimit{{1, 10.0}, {2, 30.0}, {10, 20.0}};

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* p = popen((command + " 2>/dev/null").c_str(), "r");
  if (!p) return c;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) c.out.append(buf, n);
  const int status = pclose(p);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

bool report(int id, const std::string& title, bool pass, const std::string& details) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " | " << details << "\n";
  return pass;
}

bool cli_determinism(const std::string& bin, const std::string& models) {
  const auto suite = quoted(bin) + " suite --json --seed 7";
  const auto a = capture(suite);
  const auto b = capture(suite);
  const auto pass_run = capture(quoted(bin) + " check " + quoted(models + "/kripke.model"));
  const auto fail_run = capture(quoted(bin) + " check " + quoted(models + "/nontransitive.model"));
  const auto missing = capture(quoted(bin) + " check " + quoted(models + "/absent.model"));
  const auto unknown = capture(quoted(bin) + " frobnicate");
  const auto refused = capture(quoted(bin) + " --max-size 8 check " + quoted(models + "/quantale.model"));
  const bool identical = !a.out.empty() && a.out == b.out;
  const bool codes = a.code == 0 && b.code == 0 && pass_run.code == 0 && fail_run.code == 1 && missing.code == 2 &&
                     unknown.code == 2 && refused.code == 2;
  const std::string details = std::string("suite reports ") + (identical ? "byte-identical" : "differ") + " (" +
                              std::to_string(a.out.size()) + " bytes); exit codes suite " + std::to_string(a.code) +
                              "/" + std::to_string(b.code) + ", pass " + std::to_string(pass_run.code) + ", fail " +
                              std::to_string(fail_run.code) + ", missing file " + std::to_string(missing.code) +
                              ", unknown command " + std::to_string(unknown.code) + ", refusal " +
                              std::to_string(refused.code);
  return report(12, "CLI determinism", identical && codes, details);
}

}  // namespace

int main() {
  bool all = true;
  for (const auto& c : modaldoc::acceptance_criteria()) {
    const auto start = std::chrono::steady_clock::now();
    modaldoc::CriterionResult r;
    try {
      r = c.run(kSeed);
    } catch (const std::exception& e) {
      r = {c.id, c.title, false, {std::string("error: ") + e.what()}};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = r.pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::string details = timing;
    if (auto it = kTimeLimit.find(c.id); it != kTimeLimit.end()) {
      char limit[64];
      std::snprintf(limit, sizeof limit, " (limit %.0f s)", it->second);
      details += limit;
      pass = pass && seconds < it->second;
    }
    for (const auto& d : r.details) details += "; " + d;
    all = report(c.id, c.title, pass, details) && all;
  }
  all = cli_determinism(MODALDOC_CLI, MODALDOC_MODELS_DIR) && all;
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
