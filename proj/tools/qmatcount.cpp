// qmatcount: exact counts of matrices over GF(q) with forbidden support
// positions, refined by rank, symmetry class, and quadratic character, with
// verification suites cross-checking every closed formula against brute force.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmat/formulas.hpp"
#include "qmat/oracle.hpp"
#include "qmat/polyprobe.hpp"
#include "qmat/qpoly.hpp"
#include "qmat/rook.hpp"
#include "qmat/shape_dsl.hpp"
#include "qmat/support.hpp"
#include "qmat/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace qmat;

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct OutputOptions {
  std::string out_path;
  std::string format = "json";
  bool verbose = false;
};

// reports are written atomically: temp file in the target directory + rename
void write_report(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open output file " + tmp.string());
    os << content << '\n';
    if (!os.flush()) throw Error("cannot write output file " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit(const json& doc, const OutputOptions& out) {
  std::string body = doc.dump(2);
  if (!out.out_path.empty())
    write_report(out.out_path, body);
  else
    std::cout << body << std::endl;
}

json echo_inputs(long q, std::optional<int> m, std::optional<int> n, const std::string& support,
                 const std::string& cls, const std::string& rank, int workers,
                 const std::optional<QInt>& budget) {
  json j;
  j["q"] = q;
  if (m) j["m"] = *m;
  if (n) j["n"] = *n;
  if (!support.empty()) j["support"] = support;
  if (!cls.empty()) j["class"] = cls;
  if (!rank.empty()) j["rank"] = rank;
  j["workers"] = workers;
  j["budget"] = (budget ? *budget : oracle::default_budget()).str();
  return j;
}

std::optional<QInt> parse_budget(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    return QInt(s);
  } catch (const std::exception&) {
    throw ParseError("--budget is not an integer", 0, {"integer"});
  }
}

gf::Character parse_character(const std::string& s) {
  if (s == "+" || s == "plus") return gf::kPlus;
  if (s == "-" || s == "minus") return gf::kMinus;
  throw ParseError("character must be + or -", 0, {"+", "-"});
}

int run_count(long q, std::optional<int> m, std::optional<int> n, const std::string& support_spec,
              const std::string& cls_name, const std::string& rank_spec,
              const std::string& strategy_name, const std::string& character_spec, int workers,
              const std::string& budget_spec, const OutputOptions& out) {
  auto budget = parse_budget(budget_spec);
  support::SupportSet S = cli::parse_shape_spec(support_spec, m, n);
  oracle::CountQuery query(S, q);
  auto cls = oracle::matrix_class_from_string(cls_name);
  if (!cls) throw ParseError("unknown class '" + cls_name + "'", 0, {"general", "symmetric", "skew", "symmetric_with_character"});
  query.cls = *cls;
  query.workers = workers;
  query.budget = budget;
  if (!character_spec.empty()) query.character = parse_character(character_spec);
  if (strategy_name == "exhaustive")
    query.strategy = oracle::Strategy::exhaustive;
  else if (strategy_name == "projectivized")
    query.strategy = oracle::Strategy::projectivized;
  else if (strategy_name == "pruned_column_dfs")
    query.strategy = oracle::Strategy::pruned_column_dfs;
  else if (strategy_name != "auto")
    throw ParseError("unknown method '" + strategy_name + "'", 0,
                     {"auto", "exhaustive", "projectivized", "pruned_column_dfs"});

  json doc;
  doc["schema"] = "qmatcount/1";
  doc["command"] = "count";
  doc["inputs"] = echo_inputs(q, m, n, support_spec, cls_name, rank_spec, workers, budget);
  doc["inputs"]["method"] = strategy_name;
  if (!character_spec.empty()) doc["inputs"]["character"] = character_spec;

  if (rank_spec == "all") {
    oracle::RankTable table = oracle::count_table(query);
    json ranks = json::array();
    for (std::size_t r = 0; r < table.by_rank.size(); ++r) {
      json row;
      row["rank"] = r;
      row["value"] = table.by_rank[r].str();
      if (!table.by_char.empty()) {
        row["plus"] = table.by_char[r][0].str();
        row["minus"] = table.by_char[r][1].str();
      }
      ranks.push_back(std::move(row));
    }
    doc["table"] = std::move(ranks);
    doc["value"] = table.total().str();
    doc["method"] = table.method;
    doc["work"] = table.work;
    doc["elapsed_sec"] = table.elapsed_sec;
    if (out.format == "csv") {
      std::string csv = "rank,value\n";
      for (std::size_t r = 0; r < table.by_rank.size(); ++r)
        csv += std::to_string(r) + "," + table.by_rank[r].str() + "\n";
      if (!out.out_path.empty())
        write_report(out.out_path, csv);
      else
        std::cout << csv;
      return kExitOk;
    }
  } else {
    query.r = std::stoi(rank_spec);
    oracle::CountValue v = oracle::count_restricted(query);
    doc["value"] = v.value.str();
    doc["method"] = v.method;
    doc["work"] = v.work;
    doc["elapsed_sec"] = v.elapsed_sec;
  }
  emit(doc, out);
  return kExitOk;
}

int run_formula(const std::string& name, int n, int k, int r, int m, long q,
                const std::string& method_name, const std::string& character_spec,
                const OutputOptions& out) {
  using namespace formulas;
  Method method = method_name == "closed" ? Method::closed : Method::recursive;
  gf::Character psi = character_spec.empty() ? gf::kPlus : parse_character(character_spec);
  QInt value;
  if (name == "qnumber") value = q_number(n, q);
  else if (name == "qfactorial") value = q_factorial(n, q);
  else if (name == "qdoublefactorial") value = q_double_factorial(n, q);
  else if (name == "frect") value = f_rect(k ? k : n, n, q, method);
  else if (name == "matz") value = matz_count(n, k, r, q);
  else if (name == "gzero") value = g_zero_diag(n, r, q, method);
  else if (name == "sym") value = sym_invertible(n, q);
  else if (name == "sym_rank") value = sym_rank(n, r, q);
  else if (name == "sym_char") value = sym_rank_char(n, r, psi, q);
  else if (name == "sym0_even_q") value = sym0_even_q(n, r, q);
  else if (name == "sk") value = sk_count(n, r, q, method);
  else if (name == "sq") value = sq_table(m ? m : n, q, psi);
  else if (name == "z") value = bilinear_z(n, q);
  else if (name == "y") value = bilinear_y(n, q);
  else if (name == "sym0_char") value = sym0_char_recursive(n, k, r, psi, q);
  else if (name == "symz") value = character_spec.empty() ? symz_total(n, k, q, method)
                                                          : symz_char(n, k, psi, q, method);
  else if (name == "derangement") value = derangement(n);
  else if (name == "partial_involution") value = partial_involution(n, r);
  else
    throw ParseError("unknown formula '" + name + "'", 0,
                     {"qnumber", "qfactorial", "qdoublefactorial", "frect", "matz", "gzero", "sym",
                      "sym_rank", "sym_char", "sym0_even_q", "sk", "sq", "z", "y", "sym0_char",
                      "symz", "derangement", "partial_involution"});

  json doc;
  doc["schema"] = "qmatcount/1";
  doc["command"] = "formula";
  doc["inputs"] = {{"name", name}, {"n", n},      {"k", k},
                   {"r", r},       {"m", m},      {"q", q},
                   {"method", method_name},       {"character", character_spec}};
  doc["value"] = value.str();
  emit(doc, out);
  return kExitOk;
}

int run_verify(const std::string& suite, int workers, const std::string& budget_spec,
               std::optional<long> only_q, const OutputOptions& out) {
  verify::SuiteOptions options;
  options.workers = workers;
  options.budget = parse_budget(budget_spec);
  options.only_q = only_q;
  std::vector<std::string> names;
  if (suite == "all")
    names = verify::suite_names();
  else
    names.push_back(suite);

  bool all_pass = true;
  json suites = json::array();
  for (const auto& name : names) {
    verify::SuiteReport rep = verify::run_suite(name, options);
    all_pass = all_pass && rep.pass;
    std::cerr << (rep.pass ? "[PASS] " : "[FAIL] ") << name << " (" << rep.checks.size()
              << " checks, " << rep.failures() << " failures, " << rep.elapsed_sec << " s)\n";
    if (!rep.pass)
      for (const auto& c : rep.checks)
        if (!c.pass)
          std::cerr << "    FAILED " << c.name << ": lhs=" << c.lhs << " rhs=" << c.rhs << "\n";
    suites.push_back(json::parse(rep.to_json(true, out.verbose)));
  }
  json doc;
  doc["schema"] = "qmatcount/1";
  doc["command"] = "verify";
  doc["inputs"] = {{"suite", suite}, {"workers", workers}};
  doc["inputs"]["budget"] = (options.budget ? *options.budget : oracle::default_budget()).str();
  if (only_q) doc["inputs"]["q"] = *only_q;
  doc["pass"] = all_pass;
  doc["suites"] = std::move(suites);
  emit(doc, out);
  return all_pass ? kExitOk : kExitIdentityFailure;
}

int run_rook(std::optional<int> m, std::optional<int> n, const std::string& support_spec, int r,
             long q, bool eval_poly, const OutputOptions& out) {
  support::SupportSet S = cli::parse_shape_spec(support_spec, m, n);
  json doc;
  doc["schema"] = "qmatcount/1";
  doc["command"] = "rook";
  doc["inputs"] = {{"support", support_spec}, {"r", r}};
  doc["t1"] = rook::rook_count_t1(S, r).str();
  QPolynomial poly = rook::q_rook_polynomial(support::complement(S), r);
  doc["q_rook_polynomial_of_free_region"] = poly.to_string();
  if (eval_poly && q >= 2) doc["q_rook_polynomial_at_q"] = poly.eval(q).str();
  emit(doc, out);
  return kExitOk;
}

int run_probe(long unusedq, std::optional<int> m, std::optional<int> n,
              const std::string& support_spec, const std::string& cls_name,
              const std::string& rank_spec, const std::vector<long>& q_list, int holdout,
              int workers, const std::string& budget_spec, const OutputOptions& out) {
  (void)unusedq;
  support::SupportSet S = cli::parse_shape_spec(support_spec, m, n);
  oracle::CountQuery query(S, q_list.empty() ? 2 : q_list.front());
  auto cls = oracle::matrix_class_from_string(cls_name);
  if (!cls) throw ParseError("unknown class '" + cls_name + "'", 0, {});
  query.cls = *cls;
  query.workers = workers;
  query.budget = parse_budget(budget_spec);
  if (rank_spec != "all") query.r = std::stoi(rank_spec);

  polyprobe::ProbeResult res;
  std::string budget_error;
  try {
    res = polyprobe::probe(query, q_list, holdout);
  } catch (const polyprobe::ProbeBudgetExceeded& e) {
    res = e.partial;  // report whatever completed, then exit 3
    budget_error = e.what();
  }

  json doc;
  doc["schema"] = "qmatcount/1";
  doc["command"] = "probe";
  if (!budget_error.empty()) doc["error"] = budget_error;
  doc["inputs"] = {{"support", support_spec}, {"class", cls_name},   {"rank", rank_spec},
                   {"holdout", holdout},      {"workers", workers}};
  doc["inputs"]["q_list"] = q_list;
  doc["inputs"]["budget"] = (query.budget ? *query.budget : oracle::default_budget()).str();
  doc["verdict"] = polyprobe::to_string(res.verdict);
  doc["degree_bound"] = res.degree_bound;
  doc["points_below_degree_bound"] = res.points_below_bound;
  if (res.points_below_bound)
    doc["caveat"] = "fewer sample points than the degree bound: evidence, not proof";
  json samples = json::array();
  for (const auto& [q, v] : res.samples) samples.push_back({{"q", q}, {"value", v.str()}});
  doc["samples"] = std::move(samples);
  if (res.fitted) doc["fitted"] = res.fitted->to_string();
  json held = json::array();
  for (const auto& h : res.residuals)
    held.push_back({{"q", h.q}, {"expected", h.expected.str()}, {"actual", h.actual.str()}});
  doc["held_out"] = std::move(held);
  for (const auto& pf : res.parity_fits)
    doc["parity_fits"][pf.parity] = pf.fitted.to_string();
  emit(doc, out);
  return budget_error.empty() ? kExitOk : kExitBudget;
}

int run_bruhat(int n, long q, int workers, const std::string& budget_spec,
               const OutputOptions& out) {
  auto budget = parse_budget(budget_spec);
  oracle::BruhatCells cells = oracle::bruhat_cell_counts(n, q, workers, budget);
  json doc;
  doc["schema"] = "qmatcount/1";
  doc["command"] = "bruhat";
  doc["inputs"] = {{"n", n}, {"q", q}, {"workers", workers}};
  if (budget) doc["inputs"]["budget"] = budget->str();
  json rows = json::array();
  for (const auto& [w, count] : cells.cells) {
    json row;
    row["w"] = w.images;
    row["derangement"] = w.is_derangement();
    row["count"] = count.str();
    rows.push_back(std::move(row));
  }
  doc["cells"] = std::move(rows);
  doc["total"] = cells.total.str();
  doc["f_rect"] = formulas::f_rect(n, n, q, formulas::Method::closed).str();
  doc["work"] = cells.work;
  doc["elapsed_sec"] = cells.elapsed_sec;
  emit(doc, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmatcount: exact rank/support matrix counts over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions out;
  app.add_option("--out", out.out_path, "write the report to this file (atomically)");
  app.add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--verbose", out.verbose, "include every check row in verify reports");

  long q = 2;
  std::optional<int> m, n;
  std::string support_spec = "explicit:[]", cls_name = "general", rank_spec = "all";
  std::string method_name = "auto", character_spec, budget_spec, formula_name, suite = "all";
  int workers = 0, k = 0, r = 0, mdim = 0, holdout = 1;
  std::vector<long> q_list;
  bool eval_poly = false;

  auto add_common = [&](CLI::App* cmd, bool with_q) {
    if (with_q) cmd->add_option("--q", q, "field order (prime power)");
    cmd->add_option("--workers", workers, "worker threads (0 = all cores)");
    cmd->add_option("--budget", budget_spec, "work budget override (integer)");
  };

  CLI::App* count = app.add_subcommand("count", "count matrices by oracle enumeration");
  add_common(count, true);
  count->add_option("--m", m, "rows (defaults to --n)");
  count->add_option("--n", n, "columns / size");
  count->add_option("--support", support_spec, "shape DSL, e.g. diag:3, straight:4,3,2, fano");
  count->add_option("--class", cls_name, "general|symmetric|skew|symmetric_with_character");
  count->add_option("--rank", rank_spec, "target rank or 'all'");
  count->add_option("--method", method_name, "auto|exhaustive|projectivized|pruned_column_dfs");
  count->add_option("--character", character_spec, "+ or - (symmetric_with_character)");

  CLI::App* formula = app.add_subcommand("formula", "evaluate a closed formula or recursion");
  add_common(formula, true);
  int fn = 0;
  formula->add_option("--name", formula_name, "formula name")->required();
  formula->add_option("--n", fn, "n");
  formula->add_option("--k", k, "k (diagonal zero prefix)");
  formula->add_option("--rank", r, "rank");
  formula->add_option("--m", mdim, "m (for sq)");
  formula->add_option("--method", method_name, "closed|recursive");
  formula->add_option("--character", character_spec, "+ or -");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--suite", suite, "suite name or 'all'");
  std::optional<long> verify_q;
  verify_cmd->add_option("--q", verify_q, "restrict the suite's checks to one field order");

  CLI::App* rook_cmd = app.add_subcommand("rook", "rook placements and q-rook polynomials");
  add_common(rook_cmd, true);
  rook_cmd->add_option("--m", m, "rows");
  rook_cmd->add_option("--n", n, "columns");
  rook_cmd->add_option("--support", support_spec, "shape DSL; rooks sit on its free cells");
  rook_cmd->add_option("--rank", r, "number of rooks");
  rook_cmd->add_flag("--eval", eval_poly, "also evaluate the q-rook polynomial at --q");

  CLI::App* probe_cmd = app.add_subcommand("probe", "interpolate counts across q");
  add_common(probe_cmd, false);
  probe_cmd->add_option("--m", m, "rows");
  probe_cmd->add_option("--n", n, "columns / size");
  probe_cmd->add_option("--support", support_spec, "shape DSL");
  probe_cmd->add_option("--class", cls_name, "matrix class");
  probe_cmd->add_option("--rank", rank_spec, "target rank or 'all'");
  probe_cmd->add_option("--q-list", q_list, "prime powers to sample")->delimiter(',');
  probe_cmd->add_option("--holdout", holdout, "held-out largest q count");

  CLI::App* bruhat_cmd = app.add_subcommand("bruhat", "zero-diagonal Bruhat cell counts");
  add_common(bruhat_cmd, true);
  int bn = 2;
  bruhat_cmd->add_option("--n", bn, "matrix size");

  try {
    app.parse(argc, argv);
    if (count->parsed())
      return run_count(q, m, n, support_spec, cls_name, rank_spec, method_name, character_spec,
                       workers, budget_spec, out);
    if (formula->parsed())
      return run_formula(formula_name, fn, k, r, mdim, q, method_name, character_spec, out);
    if (verify_cmd->parsed()) return run_verify(suite, workers, budget_spec, verify_q, out);
    if (rook_cmd->parsed()) return run_rook(m, n, support_spec, r, q, eval_poly, out);
    if (probe_cmd->parsed())
      return run_probe(q, m, n, support_spec, cls_name, rank_spec, q_list, holdout, workers,
                       budget_spec, out);
    if (bruhat_cmd->parsed()) return run_bruhat(bn, q, workers, budget_spec, out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
