// Integration tests driving the built qmatcount binary (path in argv[1]).

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

namespace {

using json = nlohmann::json;

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "[ok] " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "[FAILED] " << what << "\n";
  }
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& cmd) {
  std::string full = cmd + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return {-1, ""};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-qmatcount>\n";
    return 2;
  }
  const std::string bin = argv[1];

  {
    auto r = run(bin + " count --n 3 --q 2 --rank 3 --support diag:3 --class general");
    check(r.exit_code == 0, "count exits 0");
    json doc = json::parse(r.out, nullptr, false);
    check(!doc.is_discarded(), "count emits JSON");
    check(doc["schema"] == "qmatcount/1", "schema field present");
    check(doc["value"] == "14", "f(3,3) at q=2 equals 14");
    check(doc["inputs"]["q"] == 2, "inputs echoed");

    auto r2 = run(bin + " count --n 3 --q 2 --rank 3 --support diag:3 --class general");
    json doc2 = json::parse(r2.out, nullptr, false);
    check(doc2["value"] == doc["value"], "re-running yields an identical value");
  }

  {
    auto r = run(bin + " count --n 2 --q 3 --rank all --support explicit:[] --class symmetric");
    json doc = json::parse(r.out, nullptr, false);
    check(r.exit_code == 0 && !doc.is_discarded(), "rank table run");
    check(doc["table"][1]["value"] == "8", "sym(2,1) at q=3 equals 8");
  }

  {
    auto r = run(bin + " formula --name sk --n 4 --rank 2 --q 2 --method recursive");
    json doc = json::parse(r.out, nullptr, false);
    check(r.exit_code == 0 && doc["value"].is_string(), "formula run");
    auto oracle = run(bin + " count --n 4 --q 2 --rank 2 --support explicit:[] --class skew");
    json odoc = json::parse(oracle.out, nullptr, false);
    check(doc["value"] == odoc["value"], "sk(4,2) formula equals the oracle count");
  }

  {
    auto r = run(bin + " verify --suite zy");
    check(r.exit_code == 0, "verify suite zy passes");
    auto r2 = run(bin + " verify --suite clover");
    check(r2.exit_code == 0, "verify suite clover passes");
  }

  {
    auto r = run(bin + " rook --n 7 --support fano --rank 7");
    json doc = json::parse(r.out, nullptr, false);
    check(r.exit_code == 0 && doc["t1"] == "24", "fano rook count is 24");
  }

  {
    auto r = run(bin + " probe --n 2 --support diag:2 --rank 2 --class general"
                       " --q-list 2,3,5,7 --holdout 1");
    json doc = json::parse(r.out, nullptr, false);
    check(r.exit_code == 0 && doc["verdict"] == "consistent", "probe verdict consistent");
    check(doc["fitted"] == "q^2 - 2*q + 1", "probe fitted (q-1)^2");
  }

  {
    auto r = run(bin + " bruhat --n 2 --q 3");
    json doc = json::parse(r.out, nullptr, false);
    check(r.exit_code == 0, "bruhat run");
    check(doc["total"] == doc["f_rect"], "bruhat cells sum to f(n,n)");
  }

  {
    auto r = run(bin + " count --n 5 --q 5 --rank 5 --support explicit:[] --budget 10");
    check(r.exit_code == 3, "budget exceeded maps to exit 3");
    auto r2 = run(bin + " count --n 3 --q 6 --rank 1 --support explicit:[]");
    check(r2.exit_code == 2, "non-prime-power q maps to exit 2");
    auto r3 = run(bin + " count --n 3 --q 2 --rank 1 --support junk");
    check(r3.exit_code == 2, "shape parse error maps to exit 2");
  }

  {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "qmatcount_report.json";
    std::error_code ec;
    fs::remove(tmp, ec);
    auto r = run(bin + " count --n 2 --q 2 --rank 2 --support diag:2 --out " + tmp.string());
    check(r.exit_code == 0, "count with --out exits 0");
    std::ifstream in(tmp);
    json doc = json::parse(in, nullptr, false);
    check(!doc.is_discarded() && doc["value"] == "1", "atomic report file written");
    fs::remove(tmp, ec);
  }

  std::cout << (g_failures ? "FAILURES: " : "all cli checks passed: ")
            << (g_failures ? std::to_string(g_failures) : "") << "\n";
  return g_failures ? 1 : 0;
}
