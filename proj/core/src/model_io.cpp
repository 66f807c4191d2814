#include "mrfbound/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace mrfbound {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split on whitespace; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      tokens.clear();
      for (std::string w; words >> w;) tokens.push_back(std::move(w));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect(std::string_view what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) throw ParseError(line_ + 1, "unexpected end of file, expected " + std::string(what));
    return tokens;
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 0;
};

long parse_int(const std::string& s, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
  return value;
}

double parse_double(const std::string& s, int line) {
  double value = 0.0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected a number, got '" + s + "'");
  }
  return value;
}

void expect_keyword(const std::vector<std::string>& tokens, std::string_view keyword,
                    std::size_t args, int line) {
  if (tokens[0] != keyword) {
    throw ParseError(line, "expected '" + std::string(keyword) + "', got '" + tokens[0] + "'");
  }
  if (tokens.size() != args + 1) {
    throw ParseError(line, "'" + std::string(keyword) + "' takes " + std::to_string(args) +
                               " values, got " + std::to_string(tokens.size() - 1));
  }
}

}  // namespace

ModelSpec parse_model(std::istream& in) {
  LineReader reader(in);
  ModelSpec spec;

  auto tokens = reader.expect("header 'MRF v1'");
  if (tokens.size() != 2 || tokens[0] != "MRF" || tokens[1] != "v1") {
    throw ParseError(reader.line(), "expected header 'MRF v1'");
  }

  tokens = reader.expect("'vars'");
  expect_keyword(tokens, "vars", 1, reader.line());
  const long n = parse_int(tokens[1], reader.line());
  if (n < 1) throw ParseError(reader.line(), "vars must be positive");

  tokens = reader.expect("'card'");
  expect_keyword(tokens, "card", static_cast<std::size_t>(n), reader.line());
  for (long v = 0; v < n; ++v) {
    const long k = parse_int(tokens[v + 1], reader.line());
    if (k < 1) throw ParseError(reader.line(), "cardinality must be at least 1");
    spec.cardinalities.push_back(static_cast<int>(k));
  }

  tokens = reader.expect("'unary' or 'edges'");
  while (tokens[0] == "unary") {
    const int line = reader.line();
    if (tokens.size() < 2) throw ParseError(line, "'unary' needs a variable index");
    const long node = parse_int(tokens[1], line);
    if (node < 0 || node >= n) throw ParseError(line, "unary on missing variable " + tokens[1]);
    const auto k = static_cast<std::size_t>(spec.cardinalities[node]);
    if (tokens.size() != k + 2) {
      throw ParseError(line, "unary on variable " + tokens[1] + " needs " + std::to_string(k) +
                                 " values, got " + std::to_string(tokens.size() - 2));
    }
    UnarySpec unary{static_cast<int>(node), {}, line};
    for (std::size_t i = 0; i < k; ++i) unary.values.push_back(parse_double(tokens[i + 2], line));
    spec.unaries.push_back(std::move(unary));
    tokens = reader.expect("'unary' or 'edges'");
  }

  expect_keyword(tokens, "edges", 1, reader.line());
  const long m = parse_int(tokens[1], reader.line());
  if (m < 0) throw ParseError(reader.line(), "edge count must be nonnegative");

  for (long e = 0; e < m; ++e) {
    tokens = reader.expect("'edge'");
    const int line = reader.line();
    expect_keyword(tokens, "edge", 2, line);
    const long u = parse_int(tokens[1], line);
    const long v = parse_int(tokens[2], line);
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ParseError(line, "edge references a missing variable");
    }
    const int rows = spec.cardinalities[u];
    const int cols = spec.cardinalities[v];
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
      tokens = reader.expect("potential row");
      if (static_cast<int>(tokens.size()) != cols) {
        throw ParseError(reader.line(), "potential row has " + std::to_string(tokens.size()) +
                                            " values, expected " + std::to_string(cols));
      }
      for (const auto& t : tokens) values.push_back(parse_double(t, reader.line()));
    }
    spec.edges.push_back(
        {static_cast<int>(u), static_cast<int>(v), PotentialTable(rows, cols, std::move(values)), line});
  }

  if (reader.next(tokens)) {
    throw ParseError(reader.line(), "trailing content after " + std::to_string(m) + " edges");
  }
  return spec;
}

Model load_model(std::istream& in) { return Model(parse_model(in)); }

Model load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path.string() + "'");
  return load_model(in);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void save_model(const Model& model, std::ostream& out) {
  out << "MRF v1\n";
  out << "vars " << model.node_count() << "\n";
  out << "card";
  for (int k : model.cardinalities()) out << ' ' << k;
  out << "\n";
  for (int v = 0; v < model.node_count(); ++v) {
    if (auto prior = model.prior(v); !prior.empty()) {
      out << "unary " << v;
      for (double x : prior) out << ' ' << format_double(x);
      out << "\n";
    }
  }
  out << "edges " << model.edge_count() << "\n";
  for (int e = 0; e < model.edge_count(); ++e) {
    const Edge& ed = model.edge(e);
    const PotentialTable& t = model.potential(e);
    out << "edge " << ed.u << ' ' << ed.v << "\n";
    for (int r = 0; r < t.rows(); ++r) {
      for (int c = 0; c < t.cols(); ++c) {
        if (c > 0) out << ' ';
        out << format_double(t(r, c));
      }
      out << "\n";
    }
  }
}

}  // namespace mrfbound
