#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "corpus.hpp"
#include "valx/session.hpp"

namespace {

int selftest() {
  std::size_t passed = 0;
  for (const auto& entry : kCorpus) {
    valx::RunResult r = valx::run_session(entry.session);
    const bool ok = r.exit_code == 0 && r.out == entry.expected;
    std::cout << "[" << entry.name << "]\n" << r.out;
    if (!r.err.empty()) std::cout << r.err;
    std::cout << "selftest." << entry.name << " = " << (ok ? "ok" : "FAIL") << "\n";
    if (ok) ++passed;
  }
  std::cout << "selftest = " << passed << "/" << kCorpus.size() << "\n";
  return passed == kCorpus.size() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"valx: extensions of valuations to K(x) from a pair of definition"};
  std::string path;
  bool json = false;
  bool self = false;
  app.add_option("session", path, "session file");
  app.add_flag("--json", json, "one JSON object per command");
  app.add_flag("--selftest", self, "run the embedded golden corpus");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (self) return selftest();
  if (path.empty()) {
    std::cerr << "error: no session file given\n";
    return 2;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  valx::RunResult r = valx::run_session(buf.str(), json);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
