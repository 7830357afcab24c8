// Line-oriented text formats for fans, pairs and polytopes.
//
//   fan:      dim <n> / ray <c1> ... <cn> / cone <i> <j> ...   (0-based ray indices)
//   pair:     fan <path> | fan inline followed by fan lines / coeff <ray> <p>/<q>
//   polytope: dim <n> / vertex <c1> ... <cn>
//
// '#' starts a comment. Ray indices in pair files refer to the ray order of
// the fan as written. emit_* writes the canonical form, which parses back to
// the same bytes.
#pragma once

#include "torickit/pairs.hpp"
#include "torickit/polytope.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace torickit {

/// Syntax or semantic error in an input file; line 0 means the whole file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline Integer parse_integer(const Line& line, const Token& tok) {
  const std::string& s = tok.text;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size() || !std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(line.number, tok.column, "expected an integer, found '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline std::size_t parse_index(const Line& line, const Token& tok) {
  if (tok.text.empty() || !std::all_of(tok.text.begin(), tok.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(line.number, tok.column, "expected a ray index, found '" + tok.text + "'");
  Integer v(tok.text);
  if (v > 1000000) throw ParseError(line.number, tok.column, "ray index " + tok.text + " is too large");
  return static_cast<std::size_t>(v);
}

inline Rational parse_coefficient(const Line& line, const Token& tok) {
  try {
    return parse_rational(tok.text);
  } catch (const Error&) {
    throw ParseError(line.number, tok.column, "expected a rational p or p/q, found '" + tok.text + "'");
  }
}

inline std::size_t parse_dim(const Line& line) {
  if (line.tokens.size() != 2) throw ParseError(line.number, line.tokens[0].column, "expected 'dim <n>'");
  auto n = parse_index(line, line.tokens[1]);
  if (n == 0) throw ParseError(line.number, line.tokens[1].column, "dimension must be positive");
  return n;
}

inline LatticeVector parse_point(const Line& line, std::size_t dim) {
  if (line.tokens.size() != dim + 1)
    throw ParseError(line.number, line.tokens[0].column,
                     "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(line.tokens.size() - 1));
  std::vector<Integer> c;
  for (std::size_t k = 1; k < line.tokens.size(); ++k) c.push_back(parse_integer(line, line.tokens[k]));
  return LatticeVector(std::move(c));
}

}  // namespace detail

/// A parsed fan together with the ray order of the file.
struct FanFile {
  Fan fan;
  std::vector<LatticeVector> file_rays;

  /// Index in `fan` of the ray written at position i.
  std::size_t fan_index(std::size_t i) const { return *fan.index_of(file_rays.at(i)); }
};

namespace detail {

inline FanFile parse_fan_lines(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, 0, "empty fan file");
  std::optional<std::size_t> dim;
  std::vector<LatticeVector> rays;
  std::vector<RaySet> cones;
  std::map<LatticeVector, std::size_t> first_seen;
  for (const auto& line : lines) {
    const auto& key = line.tokens[0];
    if (key.text == "dim") {
      if (dim) throw ParseError(line.number, key.column, "dimension given twice");
      if (!rays.empty() || !cones.empty()) throw ParseError(line.number, key.column, "'dim' must come first");
      dim = parse_dim(line);
    } else if (key.text == "ray") {
      if (!dim) throw ParseError(line.number, key.column, "'ray' before 'dim'");
      if (!cones.empty()) throw ParseError(line.number, key.column, "'ray' after 'cone'");
      auto v = parse_point(line, *dim);
      if (v.is_zero()) throw ParseError(line.number, key.column, "zero ray");
      if (!is_primitive(v)) throw ParseError(line.number, key.column, "ray " + to_string(v) + " is not primitive");
      if (auto [it, fresh] = first_seen.emplace(v, line.number); !fresh)
        throw ParseError(line.number, key.column,
                         "duplicate ray " + to_string(v) + " (first on line " + std::to_string(it->second) + ")");
      rays.push_back(std::move(v));
    } else if (key.text == "cone") {
      if (!dim) throw ParseError(line.number, key.column, "'cone' before 'dim'");
      if (line.tokens.size() < 2) throw ParseError(line.number, key.column, "cone with no rays");
      RaySet c;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        auto i = parse_index(line, line.tokens[k]);
        if (i >= rays.size())
          throw ParseError(line.number, line.tokens[k].column, "ray index " + std::to_string(i) + " does not exist");
        if (std::find(c.begin(), c.end(), i) != c.end())
          throw ParseError(line.number, line.tokens[k].column, "ray index " + std::to_string(i) + " repeated");
        c.push_back(i);
      }
      if (auto problem = Cone::diagnose(*dim, [&] {
            std::vector<LatticeVector> g;
            for (auto i : c) g.push_back(rays[i]);
            return g;
          }()))
        throw ParseError(line.number, key.column, *problem);
      cones.push_back(std::move(c));
    } else {
      throw ParseError(line.number, key.column, "unknown keyword '" + key.text + "'");
    }
  }
  if (!dim) throw ParseError(0, 0, "missing 'dim'");
  try {
    Fan fan(*dim, rays, cones);
    if (auto r = validate_fan(fan); !r.valid) throw ParseError(0, 0, "invalid fan: " + r.message);
    return {std::move(fan), std::move(rays)};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, 0, e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace detail

inline FanFile parse_fan_file(std::string_view text) { return detail::parse_fan_lines(detail::tokenize(text)); }

inline std::string emit_fan(const Fan& fan) {
  std::string s = "dim " + std::to_string(fan.rank()) + "\n";
  for (const auto& r : fan.rays()) {
    s += "ray";
    for (const auto& c : r) s += " " + c.str();
    s += "\n";
  }
  for (const auto& c : fan.max_cones()) {
    s += "cone";
    for (auto i : c) s += " " + std::to_string(i);
    s += "\n";
  }
  return s;
}

struct PairFile {
  ToricPair pair;
  FanFile fan_file;
};

/// `base` resolves relative `fan <path>` references.
inline PairFile parse_pair_file(std::string_view text, const std::filesystem::path& base = {}) {
  auto lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens[0].text != "fan")
    throw ParseError(lines.empty() ? 0 : lines[0].number, 1, "pair file must start with 'fan <path>' or 'fan inline'");
  const auto& head = lines[0];
  if (head.tokens.size() != 2) throw ParseError(head.number, head.tokens[0].column, "expected 'fan <path>' or 'fan inline'");

  std::size_t first_coeff = 1;
  std::optional<FanFile> ff;
  if (head.tokens[1].text == "inline") {
    while (first_coeff < lines.size() && lines[first_coeff].tokens[0].text != "coeff") ++first_coeff;
    ff = detail::parse_fan_lines({lines.begin() + 1, lines.begin() + static_cast<long>(first_coeff)});
  } else {
    auto path = std::filesystem::path(head.tokens[1].text);
    if (path.is_relative()) path = base / path;
    std::string body;
    try {
      body = detail::read_file(path);
    } catch (const Error& e) {
      throw ParseError(head.number, head.tokens[1].column, e.what());
    }
    try {
      ff = parse_fan_file(body);
    } catch (const ParseError& e) {
      throw ParseError(head.number, head.tokens[1].column, path.string() + ": " + e.what());
    }
  }

  RationalVector b(ff->fan.rays().size(), Rational(0));
  std::vector<std::size_t> set_on(ff->file_rays.size(), 0);
  for (std::size_t l = first_coeff; l < lines.size(); ++l) {
    const auto& line = lines[l];
    const auto& key = line.tokens[0];
    if (key.text != "coeff") throw ParseError(line.number, key.column, "expected 'coeff <ray> <p/q>'");
    if (line.tokens.size() != 3) throw ParseError(line.number, key.column, "expected 'coeff <ray> <p/q>'");
    auto i = detail::parse_index(line, line.tokens[1]);
    if (i >= ff->file_rays.size())
      throw ParseError(line.number, line.tokens[1].column, "ray index " + std::to_string(i) + " does not exist");
    if (set_on[i])
      throw ParseError(line.number, line.tokens[1].column,
                       "coefficient of ray " + std::to_string(i) + " already set on line " + std::to_string(set_on[i]));
    set_on[i] = line.number;
    auto c = detail::parse_coefficient(line, line.tokens[2]);
    if (c < 0) throw ParseError(line.number, line.tokens[2].column, "boundary coefficient must be non-negative");
    b[ff->fan_index(i)] = c;
  }
  ToricPair pair(ff->fan, std::move(b));
  return {std::move(pair), std::move(*ff)};
}

inline PairFile load_pair_file(const std::filesystem::path& path) {
  return parse_pair_file(detail::read_file(path), path.parent_path());
}
inline FanFile load_fan_file(const std::filesystem::path& path) { return parse_fan_file(detail::read_file(path)); }

/// Canonical form: inline fan, nonzero coefficients only.
inline std::string emit_pair(const ToricPair& pair) {
  std::string s = "fan inline\n" + emit_fan(pair.fan());
  for (std::size_t i = 0; i < pair.boundary().coefficients.size(); ++i)
    if (pair.coefficient(i) != 0) s += "coeff " + std::to_string(i) + " " + to_string(pair.coefficient(i)) + "\n";
  return s;
}

inline LatticePolytope parse_polytope_file(std::string_view text) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, 0, "empty polytope file");
  std::optional<std::size_t> dim;
  std::vector<LatticeVector> verts;
  for (const auto& line : lines) {
    const auto& key = line.tokens[0];
    if (key.text == "dim") {
      if (dim) throw ParseError(line.number, key.column, "dimension given twice");
      dim = detail::parse_dim(line);
    } else if (key.text == "vertex") {
      if (!dim) throw ParseError(line.number, key.column, "'vertex' before 'dim'");
      verts.push_back(detail::parse_point(line, *dim));
    } else {
      throw ParseError(line.number, key.column, "unknown keyword '" + key.text + "'");
    }
  }
  if (!dim) throw ParseError(0, 0, "missing 'dim'");
  try {
    return LatticePolytope(*dim, verts);
  } catch (const Error& e) {
    throw ParseError(0, 0, e.what());
  }
}

inline LatticePolytope load_polytope_file(const std::filesystem::path& path) {
  return parse_polytope_file(detail::read_file(path));
}

inline std::string emit_polytope(const LatticePolytope& p) {
  std::string s = "dim " + std::to_string(p.rank()) + "\n";
  for (const auto& v : p.vertices()) {
    s += "vertex";
    for (const auto& c : v) s += " " + c.str();
    s += "\n";
  }
  return s;
}

}  // namespace torickit
