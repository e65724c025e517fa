#pragma once

// Text formats: algebra files (with optional module presentations), complex
// files and Pfaffian assignment files. Parsing keeps polynomials as text so
// the same file can be built over Q or over a prime field.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tacalc/complexes.hpp"

namespace tacalc {

struct SourceLine {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based column where `text` starts
};

struct ModuleDecl {
  std::string name;
  std::vector<int> degrees;
  std::vector<std::vector<SourceLine>> relations;  // one entry per generator
};

struct AlgebraFile {
  std::string path;
  Field field;
  std::vector<std::string> vars;
  std::vector<SourceLine> relations;
  std::vector<ModuleDecl> modules;

  const ModuleDecl& module(const std::string& name) const {
    for (const auto& m : modules)
      if (m.name == name) return m;
    fail(ErrorKind::usage, "no module named " + name + " in " + path);
  }
};

namespace detail {

struct Line {
  int number = 0;
  std::string raw;
  std::vector<std::pair<std::string, int>> words;  // word, 1-based column
};

inline std::string strip_comment(const std::string& s) {
  const auto hash = s.find('#');
  return hash == std::string::npos ? s : s.substr(0, hash);
}

inline Line split_line(int number, const std::string& raw) {
  Line l{number, strip_comment(raw), {}};
  std::size_t i = 0;
  while (i < l.raw.size()) {
    while (i < l.raw.size() && std::isspace(static_cast<unsigned char>(l.raw[i]))) ++i;
    const std::size_t start = i;
    while (i < l.raw.size() && !std::isspace(static_cast<unsigned char>(l.raw[i]))) ++i;
    if (i > start) l.words.emplace_back(l.raw.substr(start, i - start), static_cast<int>(start) + 1);
  }
  return l;
}

[[noreturn]] inline void parse_error(const std::string& path, int line, int column, const std::string& what) {
  fail(ErrorKind::parse, path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

/// Everything after the first `skip` words, with its starting column.
inline SourceLine rest_of(const Line& l, std::size_t skip) {
  if (l.words.size() <= skip) return {"", l.number, static_cast<int>(l.raw.size()) + 1};
  const int col = l.words[skip].second;
  std::string s = l.raw.substr(static_cast<std::size_t>(col - 1));
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return {s, l.number, col};
}

inline int parse_int(const std::string& path, const Line& l, std::size_t w) {
  const auto& [word, col] = l.words.at(w);
  int v = 0;
  std::size_t used = 0;
  try {
    v = std::stoi(word, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != word.size()) parse_error(path, l.number, col, "expected an integer, got '" + word + "'");
  return v;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    Line l = split_line(n, raw);
    if (!l.words.empty()) out.push_back(std::move(l));
  }
  return out;
}

inline Field parse_field(const std::string& path, const Line& l) {
  if (l.words.size() == 2 && l.words[1].first == "Q") return Field::rationals();
  if (l.words.size() == 3 && l.words[1].first == "F") {
    const int p = parse_int(path, l, 2);
    if (p == 2) parse_error(path, l.number, l.words[2].second, "field F needs an odd prime");
    try {
      return Field::prime(static_cast<std::uint64_t>(p < 0 ? 0 : p));
    } catch (const Error& e) {
      parse_error(path, l.number, l.words[2].second, e.what());
    }
  }
  parse_error(path, l.number, l.words[0].second, "expected 'field Q' or 'field F <odd prime>'");
}

}  // namespace detail

inline AlgebraFile parse_algebra_text(const std::string& text, const std::string& path = "<input>") {
  using namespace detail;
  AlgebraFile f{path, Field::rationals(), {}, {}, {}};
  bool have_field = false, have_vars = false;
  for (const Line& l : lines_of(text)) {
    const std::string& kw = l.words[0].first;
    if (kw == "field") {
      if (have_field) parse_error(path, l.number, 1, "field declared twice");
      f.field = parse_field(path, l);
      have_field = true;
    } else if (kw == "vars") {
      if (have_vars) parse_error(path, l.number, 1, "vars declared twice");
      if (l.words.size() < 2) parse_error(path, l.number, 1, "vars needs at least one name");
      for (std::size_t w = 1; w < l.words.size(); ++w) {
        const auto& [name, col] = l.words[w];
        if (!std::isalpha(static_cast<unsigned char>(name[0])) ||
            !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
          parse_error(path, l.number, col, "bad variable name '" + name + "'");
        if (std::find(f.vars.begin(), f.vars.end(), name) != f.vars.end())
          parse_error(path, l.number, col, "variable " + name + " declared twice");
        f.vars.push_back(name);
      }
      have_vars = true;
    } else if (kw == "rel") {
      if (!have_vars) parse_error(path, l.number, 1, "rel before vars");
      SourceLine s = rest_of(l, 1);
      if (s.text.empty()) parse_error(path, l.number, s.column, "rel needs a polynomial");
      f.relations.push_back(std::move(s));
    } else if (kw == "module") {
      if (l.words.size() < 4 || l.words[2].first != "degrees")
        parse_error(path, l.number, 1, "expected 'module <name> degrees <d>+'");
      ModuleDecl m{l.words[1].first, {}, {}};
      for (const auto& other : f.modules)
        if (other.name == m.name) parse_error(path, l.number, l.words[1].second, "module " + m.name + " declared twice");
      for (std::size_t w = 3; w < l.words.size(); ++w) m.degrees.push_back(parse_int(path, l, w));
      f.modules.push_back(std::move(m));
    } else if (kw == "modrel") {
      if (l.words.size() < 3) parse_error(path, l.number, 1, "expected 'modrel <name> <entry>, ...'");
      auto it = std::find_if(f.modules.begin(), f.modules.end(),
                             [&](const ModuleDecl& m) { return m.name == l.words[1].first; });
      if (it == f.modules.end()) parse_error(path, l.number, l.words[1].second, "unknown module " + l.words[1].first);
      const SourceLine s = rest_of(l, 2);
      std::vector<SourceLine> entries;
      int col = s.column;
      for (const auto& piece : split_commas(s.text)) {
        entries.push_back({piece, l.number, col});
        col += static_cast<int>(piece.size()) + 1;
      }
      if (entries.size() != it->degrees.size())
        parse_error(path, l.number, s.column,
                    "modrel has " + std::to_string(entries.size()) + " entries but module " + it->name + " has " +
                        std::to_string(it->degrees.size()) + " generators");
      it->relations.push_back(std::move(entries));
    } else {
      parse_error(path, l.number, l.words[0].second, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_vars) fail(ErrorKind::parse, path + ": missing vars line");
  return f;
}

inline AlgebraFile parse_algebra_file(const std::string& path) {
  return parse_algebra_text(detail::read_file(path), path);
}

/// Parses one polynomial, reporting errors at the file position.
template <FieldElement K>
Polynomial<K> parse_at(const SourceLine& s, const ContextPtr& ctx, const std::string& path) {
  try {
    return parse_poly<K>(s.text, ctx);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::parse) throw;
    detail::parse_error(path, s.line, s.column, e.what());
  }
}

/// The algebra over `f` (the declared field unless overridden).
template <FieldElement K>
AlgebraSpec<K> to_spec(const AlgebraFile& file, const Field& f) {
  AlgebraSpec<K> spec{make_context(file.vars, f), {}};
  for (const auto& r : file.relations) {
    Polynomial<K> p = parse_at<K>(r, spec.ctx, file.path);
    if (!p.is_zero() && !p.is_homogeneous())
      detail::parse_error(file.path, r.line, r.column, "inhomogeneous relation " + p.to_string());
    spec.relations.push_back(std::move(p));
  }
  return spec;
}

template <FieldElement K>
GradedModule<K> to_module(const AlgebraFile& file, const ModuleDecl& m, const AlgebraPtr<K>& a) {
  FreeModule<K> gens(a, m.degrees);
  std::vector<int> rel_degrees;
  std::vector<std::vector<Polynomial<K>>> columns;
  for (const auto& rel : m.relations) {
    std::optional<int> deg;
    std::vector<Polynomial<K>> col;
    for (std::size_t g = 0; g < rel.size(); ++g) {
      Polynomial<K> p = parse_at<K>(rel[g], a->spec().ctx, file.path);
      if (!p.is_zero()) {
        if (!p.is_homogeneous())
          detail::parse_error(file.path, rel[g].line, rel[g].column, "inhomogeneous module relation entry");
        const int d = p.degree() + m.degrees[g];
        if (deg && *deg != d)
          detail::parse_error(file.path, rel[g].line, rel[g].column, "module relation is not homogeneous");
        deg = d;
      }
      col.push_back(std::move(p));
    }
    if (!deg) continue;  // the zero relation
    rel_degrees.push_back(*deg);
    columns.push_back(std::move(col));
  }
  FreeModule<K> src(a, rel_degrees);
  std::vector<std::vector<Polynomial<K>>> forms(gens.rank());
  for (std::size_t i = 0; i < gens.rank(); ++i)
    for (const auto& c : columns) forms[i].push_back(c[i]);
  return GradedModule<K>{gens, map_from_forms<K>(src, gens, forms)};
}

/// Canonical text of an algebra: declared field, variables, then relations in
/// canonical polynomial form, then modules.
template <FieldElement K>
std::string print_algebra(const AlgebraSpec<K>& spec, const std::vector<ModuleDecl>& modules = {}) {
  std::string s = "field " + spec.field().to_string() + "\nvars";
  for (const auto& v : spec.var_names()) s += " " + v;
  s += "\n";
  for (const auto& r : spec.relations) s += "rel " + r.to_string() + "\n";
  for (const auto& m : modules) {
    s += "module " + m.name + " degrees";
    for (int d : m.degrees) s += " " + std::to_string(d);
    s += "\n";
    for (const auto& rel : m.relations) {
      s += "modrel " + m.name + " ";
      for (std::size_t g = 0; g < rel.size(); ++g) {
        if (g) s += ", ";
        s += parse_poly<K>(rel[g].text, spec.ctx).to_string();
      }
      s += "\n";
    }
  }
  return s;
}

inline std::string print_algebra_file(const AlgebraFile& f) {
  if (f.field.is_rational()) return print_algebra(to_spec<Rational>(f, f.field), f.modules);
  return print_algebra(to_spec<Zp>(f, f.field), f.modules);
}

struct MapDecl {
  std::string name, from, to;
  std::vector<std::vector<SourceLine>> rows;
  int line = 0;
};

struct ComplexFile {
  std::string path;
  std::string algebra;  // resolved against the complex file's directory
  std::vector<std::pair<std::string, std::vector<int>>> modules;
  std::vector<MapDecl> maps;
  std::optional<int> period;
};

namespace detail {

/// Splits "[[a, b], [c, d]]" into rows of entries with columns.
inline std::vector<std::vector<SourceLine>> parse_matrix(const std::string& path, const std::vector<Line>& lines,
                                                         std::size_t& k) {
  std::string text;
  std::vector<std::pair<int, int>> where;  // (line, column) of each character
  int depth = 0;
  bool started = false, closed = false;
  while (k < lines.size() && !closed) {
    const Line& l = lines[k++];
    for (std::size_t c = 0; c < l.raw.size(); ++c) {
      const char ch = l.raw[c];
      if (closed) {
        if (!std::isspace(static_cast<unsigned char>(ch)))
          parse_error(path, l.number, static_cast<int>(c) + 1, "text after matrix");
        continue;
      }
      if (!started && std::isspace(static_cast<unsigned char>(ch))) continue;
      if (!started && ch != '[') parse_error(path, l.number, static_cast<int>(c) + 1, "expected '[' to open a matrix");
      started = true;
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      text += ch;
      where.emplace_back(l.number, static_cast<int>(c) + 1);
      closed = depth == 0;
    }
    text += ' ';
    where.emplace_back(l.number, static_cast<int>(l.raw.size()) + 1);
  }
  if (!closed) parse_error(path, lines.empty() ? 0 : lines.back().number, 1, "unterminated matrix");
  std::vector<std::vector<SourceLine>> rows;
  std::size_t i = 1;  // inside the outer bracket
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] == ']') break;
    if (text[i] != '[') parse_error(path, where[i].first, where[i].second, "expected '[' to open a row");
    ++i;
    std::vector<SourceLine> row;
    std::string cur;
    std::pair<int, int> start = where[i < where.size() ? i : where.size() - 1];
    for (; i < text.size() && text[i] != ']'; ++i) {
      if (text[i] == '[') parse_error(path, where[i].first, where[i].second, "nested brackets inside a row");
      if (text[i] == ',') {
        row.push_back({cur, start.first, start.second});
        cur.clear();
        start = where[i + 1];
      } else {
        cur += text[i];
      }
    }
    row.push_back({cur, start.first, start.second});
    ++i;
    for (auto& e : row) {
      const auto b = e.text.find_first_not_of(' ');
      e.text = b == std::string::npos ? "" : e.text.substr(b, e.text.find_last_not_of(' ') - b + 1);
      if (e.text.empty()) parse_error(path, e.line, e.column, "empty matrix entry");
    }
    rows.push_back(std::move(row));
    skip_ws();
    if (i < text.size() && text[i] == ',') ++i;
  }
  return rows;
}

}  // namespace detail

inline ComplexFile parse_complex_text(const std::string& text, const std::string& path = "<input>") {
  using namespace detail;
  ComplexFile c;
  c.path = path;
  const std::vector<Line> lines = lines_of(text);
  std::size_t k = 0;
  while (k < lines.size()) {
    const Line& l = lines[k];
    const std::string& kw = l.words[0].first;
    if (kw == "algebra") {
      if (l.words.size() != 2) parse_error(path, l.number, 1, "expected 'algebra <path>'");
      std::filesystem::path p(l.words[1].first);
      if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
      c.algebra = p.lexically_normal().string();
      ++k;
    } else if (kw == "module") {
      if (l.words.size() < 4 || l.words[2].first != "degrees")
        parse_error(path, l.number, 1, "expected 'module <name> degrees <d>+'");
      std::vector<int> d;
      for (std::size_t w = 3; w < l.words.size(); ++w) d.push_back(parse_int(path, l, w));
      c.modules.emplace_back(l.words[1].first, std::move(d));
      ++k;
    } else if (kw == "map") {
      if (l.words.size() != 6 || l.words[2].first != "from" || l.words[4].first != "to")
        parse_error(path, l.number, 1, "expected 'map <name> from <M> to <N>'");
      MapDecl m{l.words[1].first, l.words[3].first, l.words[5].first, {}, l.number};
      ++k;
      if (k >= lines.size()) parse_error(path, l.number, 1, "map " + m.name + " needs a matrix");
      m.rows = parse_matrix(path, lines, k);
      c.maps.push_back(std::move(m));
    } else if (kw == "periodic") {
      if (l.words.size() != 2) parse_error(path, l.number, 1, "expected 'periodic <p>'");
      const int p = parse_int(path, l, 1);
      if (p < 1) parse_error(path, l.number, l.words[1].second, "period must be at least 1");
      c.period = p;
      ++k;
    } else {
      parse_error(path, l.number, l.words[0].second, "unknown keyword '" + kw + "'");
    }
  }
  if (c.algebra.empty()) fail(ErrorKind::parse, path + ": missing algebra line");
  if (c.maps.empty()) fail(ErrorKind::parse, path + ": no maps");
  return c;
}

inline ComplexFile parse_complex_file(const std::string& path) {
  return parse_complex_text(detail::read_file(path), path);
}

/// Maps are listed as d_1, d_2, ...; each map's target is the previous map's source.
template <FieldElement K>
FreeComplex<K> to_complex(const ComplexFile& c, const AlgebraPtr<K>& a) {
  auto module = [&](const std::string& name, int line) {
    for (const auto& [n, d] : c.modules)
      if (n == name) return FreeModule<K>(a, d);
    detail::parse_error(c.path, line, 1, "unknown module " + name);
  };
  std::vector<ModuleMap<K>> maps;
  for (std::size_t k = 0; k < c.maps.size(); ++k) {
    const MapDecl& m = c.maps[k];
    if (k > 0 && m.to != c.maps[k - 1].from)
      detail::parse_error(c.path, m.line, 1,
                          "map " + m.name + " must land in " + c.maps[k - 1].from + ", the source of the previous map");
    const FreeModule<K> src = module(m.from, m.line), tgt = module(m.to, m.line);
    std::vector<std::vector<Polynomial<K>>> forms;
    for (const auto& row : m.rows) {
      std::vector<Polynomial<K>> r;
      for (const auto& e : row) r.push_back(parse_at<K>(e, a->spec().ctx, c.path));
      forms.push_back(std::move(r));
    }
    try {
      maps.push_back(map_from_forms<K>(src, tgt, forms));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::cap_exceeded) throw;
      detail::parse_error(c.path, m.line, 1, "map " + m.name + ": " + e.what());
    }
  }
  if (c.period) {
    require(static_cast<int>(maps.size()) == *c.period, ErrorKind::parse,
            c.path + ": periodic " + std::to_string(*c.period) + " needs exactly that many maps, found " +
                std::to_string(maps.size()));
    return FreeComplex<K>::periodic_from(a, std::move(maps));
  }
  FreeComplex<K> out{a, 0, std::move(maps), std::nullopt, 0};
  out.check_shapes();
  return out;
}

/// Target of a Pfaffian specialization: a polynomial ring (field + vars) or
/// an algebra file, plus images "t12 = <polynomial>".
struct AssignmentFile {
  std::string path;
  std::string algebra;  // set when the target is an algebra file
  Field field;
  std::vector<std::string> vars;
  std::map<std::string, SourceLine> images;
};

inline AssignmentFile parse_assignment_text(const std::string& text, const std::string& path = "<input>") {
  using namespace detail;
  AssignmentFile a{path, "", Field::rationals(), {}, {}};
  for (const Line& l : lines_of(text)) {
    const std::string& kw = l.words[0].first;
    if (kw == "algebra") {
      if (l.words.size() != 2) parse_error(path, l.number, 1, "expected 'algebra <path>'");
      std::filesystem::path p(l.words[1].first);
      if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
      a.algebra = p.lexically_normal().string();
    } else if (kw == "field") {
      a.field = parse_field(path, l);
    } else if (kw == "vars") {
      for (std::size_t w = 1; w < l.words.size(); ++w) a.vars.push_back(l.words[w].first);
    } else if (l.words.size() >= 3 && l.words[1].first == "=") {
      if (a.images.count(kw)) parse_error(path, l.number, 1, "second image for " + kw);
      a.images.emplace(kw, rest_of(l, 2));
    } else {
      parse_error(path, l.number, l.words[0].second, "expected 'algebra', 'field', 'vars' or '<t_ij> = <polynomial>'");
    }
  }
  if (a.algebra.empty() && a.vars.empty()) fail(ErrorKind::parse, path + ": needs an algebra line or a vars line");
  if (!a.algebra.empty() && !a.vars.empty()) fail(ErrorKind::parse, path + ": give either algebra or vars, not both");
  return a;
}

inline AssignmentFile parse_assignment_file(const std::string& path) {
  return parse_assignment_text(detail::read_file(path), path);
}

template <FieldElement K>
std::map<std::string, Polynomial<K>> to_assignment(const AssignmentFile& a, const ContextPtr& ctx) {
  std::map<std::string, Polynomial<K>> out;
  for (const auto& [name, s] : a.images) out.emplace(name, parse_at<K>(s, ctx, a.path));
  return out;
}

}  // namespace tacalc
