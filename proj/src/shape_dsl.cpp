#include "qmat/shape_dsl.hpp"

#include <cctype>

namespace qmat::cli {
namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  std::optional<int> grid_m, grid_n;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "shape spec parse error at byte " + std::to_string(pos) + "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i)
      msg += (i ? " | " : "") + expected[i];
    throw ParseError(msg, pos, std::move(expected));
  }

  bool eat(char c) {
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat_word(const std::string& w) {
    if (text.compare(pos, w.size(), w) == 0) {
      pos += w.size();
      return true;
    }
    return false;
  }

  int integer() {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail({"integer"});
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000) fail({"smaller integer"});
      ++pos;
    }
    return int(v);
  }

  std::vector<int> int_list() {
    std::vector<int> v{integer()};
    while (eat(',')) v.push_back(integer());
    return v;
  }

  int required_square(const char* what) {
    if (grid_m && grid_n && *grid_m != *grid_n) fail({std::string(what) + " needs a square grid"});
    if (grid_n) return *grid_n;
    if (grid_m) return *grid_m;
    fail({std::string(what) + " needs --n"});
  }

  support::SupportSet spec() {
    if (eat_word("complement(")) {
      support::SupportSet inner = spec();
      if (!eat(')')) fail({")"});
      return support::complement(inner);
    }
    if (eat_word("diag:")) {
      int k = integer();
      int m = grid_m.value_or(grid_n.value_or(0));
      int n = grid_n.value_or(grid_m.value_or(0));
      if (m == 0 || n == 0) fail({"diag needs --n (and optionally --m)"});
      if (k > std::min(m, n)) fail({"diag:k with k <= min(m,n)"});
      support::SupportSet s(m, n);
      for (int i = 1; i <= k; ++i) s.forbid(i, i);
      return s;
    }
    if (eat_word("straight:")) {
      int n = required_square("straight shape");
      return support::shape(support::ShapeKind::straight, support::Partition(int_list()), n);
    }
    if (eat_word("skew:")) {
      support::Partition lambda{int_list()};
      if (!eat('/')) fail({"/"});
      support::Partition mu{int_list()};
      int n = required_square("skew shape");
      return support::shape(support::ShapeKind::skew, lambda, mu, n);
    }
    if (eat_word("fano")) {
      if ((grid_m && *grid_m != 7) || (grid_n && *grid_n != 7))
        fail({"fano needs a 7x7 grid"});
      return support::fano_support();
    }
    if (eat_word("explicit:[")) {
      std::vector<std::pair<int, int>> positions;
      if (!eat(']')) {
        do {
          if (!eat('(')) fail({"("});
          int i = integer();
          if (!eat(',')) fail({","});
          int j = integer();
          if (!eat(')')) fail({")"});
          positions.emplace_back(i, j);
        } while (eat(','));
        if (!eat(']')) fail({"]", ","});
      }
      int m = grid_m.value_or(grid_n.value_or(0));
      int n = grid_n.value_or(grid_m.value_or(0));
      if (m == 0 || n == 0) fail({"explicit needs --n (and optionally --m)"});
      return support::SupportSet::from_positions(m, n, positions);
    }
    if (eat_word("graph:")) {
      std::vector<std::pair<int, int>> edges;
      int max_vertex = 0;
      do {
        int a = integer();
        if (!eat('-')) fail({"-"});
        int b = integer();
        edges.emplace_back(a, b);
        max_vertex = std::max({max_vertex, a, b});
      } while (eat(','));
      return support::graph_support(max_vertex, edges);
    }
    fail({"diag:", "straight:", "skew:", "fano", "complement(", "explicit:[", "graph:"});
  }

  support::SupportSet parse() {
    support::SupportSet s = spec();
    if (pos != text.size()) fail({"end of input"});
    return s;
  }
};

}  // namespace

support::SupportSet parse_shape_spec(const std::string& text, std::optional<int> m,
                                     std::optional<int> n) {
  Parser p{text, 0, m, n};
  try {
    return p.parse();
  } catch (const OutOfRange& e) {
    throw ParseError(std::string("shape spec rejected: ") + e.what(), p.pos, {});
  } catch (const NotNested& e) {
    throw ParseError(std::string("shape spec rejected: ") + e.what(), p.pos, {});
  } catch (const ApexMissing& e) {
    throw ParseError(std::string("shape spec rejected: ") + e.what(), p.pos, {});
  }
}

}  // namespace qmat::cli
