#include "roth/document.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstring>
#include <map>
#include <set>

namespace roth {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char *kUnits = "ijk";

bool is_reserved(std::string_view w) { return w == "field" || w == "tol" || w == "unknown" || w == "conj"; }

std::string shortest(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// ---------------------------------------------------------------------------
// DSL reader

class DslParser {
public:
  explicit DslParser(std::string_view text) : text_(text) {}

  SystemDocument run() {
    skip();
    expect_word("field");
    skip();
    auto [kl, kc] = here();
    auto k = word();
    try {
      doc_.kind = kind_from_name(k);
    } catch (const Error &) {
      throw ParseError(kl, kc, "expected R, C or H after 'field', found '" + k + "'");
    }
    skip();
    if (peek_word() == "tol") {
      word();
      skip();
      auto [l, c] = here();
      auto num = numeral();
      if (num.empty() || !is_numeral(num)) throw ParseError(l, c, "expected a number after 'tol'");
      doc_.tol = NumTraits<double>::parse(num);
      if (!(*doc_.tol > 0)) throw ParseError(l, c, "tol must be positive");
    }
    for (skip(); !eof(); skip()) statement();
    if (doc_.equations.empty()) fail("expected at least one equation");
    return std::move(doc_);
  }

private:
  // Position helpers ---------------------------------------------------------
  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  std::pair<std::size_t, std::size_t> here() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string describe_here() const {
    if (eof()) return "end of input";
    return std::string("'") + peek() + "'";
  }

  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(line_, col_, msg); }

  void expect(char c) {
    if (peek() != c || eof()) fail(std::string("expected '") + c + "', found " + describe_here());
    advance();
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string peek_word() const {
    std::size_t p = pos_;
    if (p >= text_.size() || !ident_start(text_[p])) return {};
    while (p < text_.size() && ident_char(text_[p])) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  std::string word() {
    std::string w;
    while (!eof() && ident_char(peek()) && (!w.empty() || ident_start(peek()))) {
      w.push_back(peek());
      advance();
    }
    return w;
  }

  void expect_word(const char *w) {
    if (peek_word() != w) fail(std::string("expected '") + w + "', found " + describe_here());
    word();
  }

  std::string name(const char *what) {
    if (!ident_start(peek())) fail(std::string("expected ") + what + ", found " + describe_here());
    auto [l, c] = here();
    auto w = word();
    if (is_reserved(w)) throw ParseError(l, c, "'" + w + "' is a reserved word");
    return w;
  }

  std::size_t integer(const char *what) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what + ", found " + describe_here());
    std::size_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::size_t>(peek() - '0');
      if (v > 100000) fail("dimension too large");
      advance();
    }
    return v;
  }

  // Unsigned decimal, optional exponent, optional `/denominator`.
  std::string numeral() {
    std::string s;
    auto decimal = [&] {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        s.push_back(peek());
        advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        s.push_back(peek());
        advance();
        if (peek() == '+' || peek() == '-') {
          s.push_back(peek());
          advance();
        }
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          s.push_back(peek());
          advance();
        }
      }
    };
    decimal();
    if (!s.empty() && peek() == '/') {
      s.push_back('/');
      advance();
      decimal();
    }
    return s;
  }

  // Statements ---------------------------------------------------------------
  void statement() {
    const std::size_t save_pos = pos_, save_line = line_, save_col = col_;
    if (ident_start(peek())) {
      auto w = peek_word();
      if (!is_reserved(w)) {
        word();
        skip();
        if (peek() == ':') {
          pos_ = save_pos;
          line_ = save_line;
          col_ = save_col;
          declaration();
          return;
        }
      }
      pos_ = save_pos;
      line_ = save_line;
      col_ = save_col;
    }
    equation();
  }

  void declaration() {
    auto [l, c] = here();
    auto n = name("a name");
    if (declared_.count(n)) throw ParseError(l, c, "'" + n + "' is already declared");
    skip();
    expect(':');
    skip();
    const auto rows = integer("a row count");
    skip();
    if (peek() != 'x') fail("expected 'x' between dimensions, found " + describe_here());
    advance();
    skip();
    const auto cols = integer("a column count");
    skip();
    if (peek_word() == "unknown") {
      word();
      if (rows == 0 || cols == 0) throw ParseError(l, c, "unknown '" + n + "' needs a nonempty shape");
      doc_.unknowns.push_back({n, rows, cols});
      unknowns_.insert(n);
    } else if (peek() == '=') {
      advance();
      skip();
      doc_.constants.push_back(matrix_literal(n, rows, cols));
    } else {
      fail("expected 'unknown' or '=' after the shape of '" + n + "', found " + describe_here());
    }
    declared_.insert(n);
  }

  DocMatrix matrix_literal(const std::string &n, std::size_t rows, std::size_t cols) {
    DocMatrix m{n, rows, cols, {}};
    auto [l, c] = here();
    expect('[');
    std::size_t r = 0;
    for (;;) {
      skip();
      auto [rl, rc] = here();
      expect('[');
      std::size_t k = 0;
      for (;;) {
        skip();
        m.entries.push_back(scalar_literal());
        ++k;
        skip();
        if (peek() == ',') {
          advance();
          continue;
        }
        expect(']');
        break;
      }
      if (k != cols)
        throw ParseError(rl, rc, "row " + std::to_string(r + 1) + " of '" + n + "' has " + std::to_string(k) +
                                     (k == 1 ? " entry" : " entries") + ", expected " + std::to_string(cols));
      ++r;
      skip();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']');
      break;
    }
    if (r != rows)
      throw ParseError(l, c, "'" + n + "' has " + std::to_string(r) + " rows, expected " + std::to_string(rows));
    return m;
  }

  DocScalar scalar_literal() {
    const std::size_t e = arity(doc_.kind);
    DocScalar s(e, "0");
    std::vector<bool> seen(e, false);
    bool first = true;
    for (;;) {
      skip();
      auto [l, c] = here();
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        advance();
        skip();
      } else if (!first) {
        break;
      }
      auto num = numeral();
      if (!num.empty() && !is_numeral(num)) throw ParseError(l, c, "malformed number '" + num + "'");
      if (!num.empty()) {
        try {
          NumTraits<Rational>::parse(num);
        } catch (const Error &err) {
          throw ParseError(l, c, err.what());
        }
      }
      std::size_t comp = 0;
      if (const char *u = std::strchr(kUnits, peek()); u && peek() != '\0') {
        comp = static_cast<std::size_t>(u - kUnits) + 1;
        if (comp >= e)
          fail(std::string("unit '") + peek() + "' is not available over " + std::string(kind_name(doc_.kind)));
        advance();
      } else if (num.empty()) {
        fail("expected a number, found " + describe_here());
      }
      if (seen[comp]) throw ParseError(l, c, "component repeated in scalar literal");
      seen[comp] = true;
      if (num.empty()) num = "1";
      s[comp] = negative ? "-" + num : num;
      first = false;
    }
    return s;
  }

  void equation() {
    DocEquation eq;
    eq.line = line_;
    eq.first = term();
    skip();
    expect('-');
    skip();
    eq.second = term();
    skip();
    expect('=');
    skip();
    auto [l, c] = here();
    eq.rhs = name("a constant name");
    check_constant(eq.rhs, l, c);
    doc_.equations.push_back(std::move(eq));
  }

  struct Factor {
    std::string name;
    SigmaOp sigma = SigmaOp::Identity;
    bool sigma_given = false;
    std::size_t line = 0, col = 0;
  };

  Factor factor() {
    Factor f;
    std::tie(f.line, f.col) = here();
    if (peek_word() == "conj") {
      word();
      skip();
      expect('(');
      skip();
      std::tie(f.line, f.col) = here();
      f.name = name("a name");
      skip();
      expect(')');
      f.sigma = SigmaOp::Conj;
      f.sigma_given = true;
      return f;
    }
    f.name = name("a name or 'conj('");
    skip();
    if (peek() == '^') {
      advance();
      skip();
      if (peek() == 'T') {
        f.sigma = SigmaOp::Dagger;
      } else if (peek() == '*') {
        f.sigma = SigmaOp::Star;
      } else {
        fail("expected 'T' or '*' after '^', found " + describe_here());
      }
      advance();
      f.sigma_given = true;
    }
    return f;
  }

  DocTerm term() {
    auto [l, c] = here();
    std::vector<Factor> fs{factor()};
    for (;;) {
      skip();
      if (peek() != '*') break;
      advance();
      skip();
      fs.push_back(factor());
    }
    std::vector<std::size_t> unk;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!declared_.count(fs[i].name))
        throw ParseError(fs[i].line, fs[i].col, "undeclared name '" + fs[i].name + "'");
      if (unknowns_.count(fs[i].name)) unk.push_back(i);
      else if (fs[i].sigma_given)
        throw ParseError(fs[i].line, fs[i].col, "involution applied to constant '" + fs[i].name + "'");
    }
    if (unk.size() != 1) throw ParseError(l, c, "a term must contain exactly one unknown");
    const std::size_t u = unk[0];
    if (fs.size() > 3 || (fs.size() == 3 && u != 1))
      throw ParseError(l, c, "a term has the form [pre *] unknown [* post]");
    DocTerm t;
    t.unknown = fs[u].name;
    t.sigma = fs[u].sigma;
    if (u == 1) t.pre = fs[0].name;
    if (u + 1 < fs.size()) t.post = fs[u + 1].name;
    return t;
  }

  void check_constant(const std::string &n, std::size_t l, std::size_t c) {
    if (!declared_.count(n)) throw ParseError(l, c, "undeclared name '" + n + "'");
    if (unknowns_.count(n)) throw ParseError(l, c, "'" + n + "' is an unknown, expected a constant");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  SystemDocument doc_;
  std::set<std::string> declared_;
  std::set<std::string> unknowns_;
};

// ---------------------------------------------------------------------------
// DSL writer

std::string scalar_text(const DocScalar &s) {
  std::string out;
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (s[p] == "0") continue;
    const bool neg = !s[p].empty() && s[p][0] == '-';
    if (!out.empty() && !neg) out += '+';
    out += s[p];
    if (p > 0) out += kUnits[p - 1];
  }
  return out.empty() ? "0" : out;
}

std::string term_text(const DocTerm &t) {
  std::string u;
  switch (t.sigma) {
  case SigmaOp::Identity: u = t.unknown; break;
  case SigmaOp::Conj: u = "conj(" + t.unknown + ")"; break;
  case SigmaOp::Dagger: u = t.unknown + "^T"; break;
  case SigmaOp::Star: u = t.unknown + "^*"; break;
  }
  if (t.pre) u = *t.pre + "*" + u;
  if (t.post) u += "*" + *t.post;
  return u;
}

// ---------------------------------------------------------------------------
// JSON helpers

[[noreturn]] void schema_error(const std::string &where, const std::string &what) {
  throw Error("json: " + where + ": " + what);
}

const ojson &field(const ojson &j, const char *key, const std::string &where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing '") + key + "'");
  return *it;
}

std::string get_string(const ojson &j, const std::string &where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

std::size_t get_size(const ojson &j, const std::string &where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    schema_error(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string numeral_from_json(const ojson &j, const std::string &where) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number_integer()) {
    s = std::to_string(j.get<long long>());
  } else if (j.is_number()) {
    s = NumTraits<double>::format(j.get<double>());
  } else {
    schema_error(where, "expected a number or numeral string");
  }
  if (!is_numeral(s)) schema_error(where, "malformed number '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return s;
}

DocScalar scalar_from_json(const ojson &j, std::size_t e, const std::string &where) {
  if (!j.is_array()) {
    DocScalar s(e, "0");
    s[0] = numeral_from_json(j, where);
    return s;
  }
  if (j.size() != e)
    schema_error(where, "expected " + std::to_string(e) + " components, found " + std::to_string(j.size()));
  DocScalar s;
  for (std::size_t p = 0; p < e; ++p) s.push_back(numeral_from_json(j[p], where + "[" + std::to_string(p) + "]"));
  return s;
}

std::vector<DocScalar> data_from_json(const ojson &j, std::size_t rows, std::size_t cols, std::size_t e,
                                      const std::string &where) {
  if (!j.is_array() || j.size() != rows) schema_error(where, "expected " + std::to_string(rows) + " rows");
  std::vector<DocScalar> out;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto &row = j[r];
    const auto w = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != cols) schema_error(w, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) out.push_back(scalar_from_json(row[c], e, w + "[" + std::to_string(c) + "]"));
  }
  return out;
}

ojson data_to_json(const std::vector<DocScalar> &entries, std::size_t rows, std::size_t cols) {
  ojson data = ojson::array();
  for (std::size_t r = 0; r < rows; ++r) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(entries[r * cols + c]);
    data.push_back(std::move(row));
  }
  return data;
}

template <class T> std::vector<DocScalar> doc_entries(const Matrix<T> &m) {
  std::vector<DocScalar> out;
  const std::size_t e = arity(m.kind());
  for (const auto &x : m.entries()) {
    DocScalar s;
    for (std::size_t p = 0; p < e; ++p) s.push_back(NumTraits<T>::format(x.components()[p]));
    out.push_back(std::move(s));
  }
  return out;
}

template <class T> ojson matrix_json(const Matrix<T> &m) {
  return data_to_json(doc_entries(m), m.rows(), m.cols());
}

template <class T>
Matrix<T> matrix_from_entries(ScalarKind kind, std::size_t rows, std::size_t cols, const std::vector<DocScalar> &entries,
                              const std::string &what) {
  const std::size_t e = arity(kind);
  if (entries.size() != rows * cols) throw Error(what + ": expected " + std::to_string(rows * cols) + " entries");
  Matrix<T> m(kind, rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != e) throw Error(what + ": scalar has the wrong number of components");
    std::array<T, 4> c{T(0), T(0), T(0), T(0)};
    for (std::size_t p = 0; p < e; ++p) {
      try {
        c[p] = NumTraits<T>::parse(entries[i][p]);
      } catch (const Error &err) {
        throw Error(what + ": " + err.what());
      }
    }
    m.set(i / cols, i % cols, Scalar<T>(kind, c));
  }
  return m;
}

ojson partitioned_json(const auto &p) {
  ojson j;
  j["rows"] = p.matrix.rows();
  j["cols"] = p.matrix.cols();
  j["row_split"] = p.partition.row_split;
  j["col_split"] = p.partition.col_split;
  j["data"] = matrix_json(p.matrix);
  return j;
}

template <class T> Partitioned<T> partitioned_from_json(const ojson &j, ScalarKind kind, const std::string &where) {
  const auto rows = get_size(field(j, "rows", where), where + ".rows");
  const auto cols = get_size(field(j, "cols", where), where + ".cols");
  BlockPartition part{get_size(field(j, "row_split", where), where + ".row_split"),
                      get_size(field(j, "col_split", where), where + ".col_split")};
  if (part.row_split > rows || part.col_split > cols) schema_error(where, "split outside the matrix");
  auto entries = data_from_json(field(j, "data", where), rows, cols, arity(kind), where + ".data");
  return {matrix_from_entries<T>(kind, rows, cols, entries, where), part};
}

ojson parse_json_text(std::string_view text) {
  try {
    return ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error &e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(line, col, msg);
  }
}

std::string suffix_for(const DocEquation &eq) { return eq.line ? " (line " + std::to_string(eq.line) + ")" : ""; }

std::string strip_equation_prefix(const std::string &what) {
  auto p = what.find(": ");
  return p == std::string::npos ? what : what.substr(p + 2);
}

} // namespace

// ---------------------------------------------------------------------------

SystemDocument parse_dsl(std::string_view text) { return DslParser(text).run(); }

std::string print_dsl(const SystemDocument &doc) {
  std::string out = "field ";
  out += kind_name(doc.kind);
  out += '\n';
  if (doc.tol) out += "tol " + shortest(*doc.tol) + "\n";
  for (const auto &u : doc.unknowns)
    out += u.name + " : " + std::to_string(u.rows) + "x" + std::to_string(u.cols) + " unknown\n";
  for (const auto &m : doc.constants) {
    out += m.name + " : " + std::to_string(m.rows) + "x" + std::to_string(m.cols) + " = [";
    for (std::size_t r = 0; r < m.rows; ++r) {
      out += r ? ", [" : "[";
      for (std::size_t c = 0; c < m.cols; ++c) {
        if (c) out += ", ";
        out += scalar_text(m.entries[r * m.cols + c]);
      }
      out += "]";
    }
    out += "]\n";
  }
  for (const auto &eq : doc.equations)
    out += term_text(eq.first) + " - " + term_text(eq.second) + " = " + eq.rhs + "\n";
  return out;
}

SystemDocument parse_json_document(std::string_view text) {
  const auto j = parse_json_text(text);
  SystemDocument doc;
  try {
    doc.kind = kind_from_name(get_string(field(j, "field", "document"), "field"));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    schema_error("field", e.what());
  }
  if (auto it = j.find("tol"); it != j.end() && !it->is_null()) {
    if (!it->is_number() || !(it->get<double>() > 0)) schema_error("tol", "expected a positive number");
    doc.tol = it->get<double>();
  }
  const auto &unk = field(j, "unknowns", "document");
  if (!unk.is_array()) schema_error("unknowns", "expected an array");
  for (std::size_t i = 0; i < unk.size(); ++i) {
    const auto w = "unknowns[" + std::to_string(i) + "]";
    doc.unknowns.push_back({get_string(field(unk[i], "name", w), w + ".name"),
                            get_size(field(unk[i], "rows", w), w + ".rows"),
                            get_size(field(unk[i], "cols", w), w + ".cols")});
  }
  const auto e = arity(doc.kind);
  if (auto it = j.find("constants"); it != j.end()) {
    if (!it->is_array()) schema_error("constants", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto &c = (*it)[i];
      const auto w = "constants[" + std::to_string(i) + "]";
      DocMatrix m;
      m.name = get_string(field(c, "name", w), w + ".name");
      m.rows = get_size(field(c, "rows", w), w + ".rows");
      m.cols = get_size(field(c, "cols", w), w + ".cols");
      m.entries = data_from_json(field(c, "data", w), m.rows, m.cols, e, w + ".data");
      doc.constants.push_back(std::move(m));
    }
  }
  const auto &eqs = field(j, "equations", "document");
  if (!eqs.is_array()) schema_error("equations", "expected an array");
  auto term = [](const ojson &t, const std::string &w) {
    DocTerm out;
    out.unknown = get_string(field(t, "unknown", w), w + ".unknown");
    if (auto it = t.find("pre"); it != t.end() && !it->is_null()) out.pre = get_string(*it, w + ".pre");
    if (auto it = t.find("post"); it != t.end() && !it->is_null()) out.post = get_string(*it, w + ".post");
    if (auto it = t.find("sigma"); it != t.end() && !it->is_null()) {
      try {
        out.sigma = sigma_from_name(get_string(*it, w + ".sigma"));
      } catch (const Error &err) {
        schema_error(w + ".sigma", err.what());
      }
    }
    return out;
  };
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const auto w = "equations[" + std::to_string(i) + "]";
    DocEquation eq;
    eq.first = term(field(eqs[i], "first", w), w + ".first");
    eq.second = term(field(eqs[i], "second", w), w + ".second");
    eq.rhs = get_string(field(eqs[i], "rhs", w), w + ".rhs");
    doc.equations.push_back(std::move(eq));
  }
  return doc;
}

std::string print_json_document(const SystemDocument &doc) {
  ojson j;
  j["field"] = kind_name(doc.kind);
  if (doc.tol) j["tol"] = *doc.tol;
  j["unknowns"] = ojson::array();
  for (const auto &u : doc.unknowns) j["unknowns"].push_back({{"name", u.name}, {"rows", u.rows}, {"cols", u.cols}});
  j["constants"] = ojson::array();
  for (const auto &m : doc.constants)
    j["constants"].push_back(
        {{"name", m.name}, {"rows", m.rows}, {"cols", m.cols}, {"data", data_to_json(m.entries, m.rows, m.cols)}});
  auto term = [](const DocTerm &t) {
    ojson o;
    o["pre"] = t.pre ? ojson(*t.pre) : ojson(nullptr);
    o["unknown"] = t.unknown;
    o["sigma"] = sigma_name(t.sigma);
    o["post"] = t.post ? ojson(*t.post) : ojson(nullptr);
    return o;
  };
  j["equations"] = ojson::array();
  for (const auto &eq : doc.equations)
    j["equations"].push_back({{"first", term(eq.first)}, {"second", term(eq.second)}, {"rhs", eq.rhs}});
  return j.dump(2) + "\n";
}

SystemDocument parse_document(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_json_document(text) : parse_dsl(text);
  }
  throw ParseError(1, 1, "empty input");
}

template <class T> EquationSystem<T> to_system(const SystemDocument &doc, bool strict_corollary) {
  EquationSystem<T> sys;
  sys.kind = doc.kind;
  sys.strict_corollary = strict_corollary;
  sys.unknowns = doc.unknowns;

  std::map<std::string, std::size_t> unknown_index;
  for (std::size_t j = 0; j < doc.unknowns.size(); ++j)
    if (!unknown_index.emplace(doc.unknowns[j].name, j).second)
      throw Error("duplicate name '" + doc.unknowns[j].name + "'");
  std::map<std::string, Matrix<T>> constants;
  for (const auto &m : doc.constants) {
    if (unknown_index.count(m.name) || constants.count(m.name)) throw Error("duplicate name '" + m.name + "'");
    constants.emplace(m.name, matrix_from_entries<T>(doc.kind, m.rows, m.cols, m.entries, "constant '" + m.name + "'"));
  }

  for (std::size_t i = 0; i < doc.equations.size(); ++i) {
    const auto &de = doc.equations[i];
    const auto where = suffix_for(de);
    auto unknown = [&](const std::string &n) {
      auto it = unknown_index.find(n);
      if (it == unknown_index.end()) {
        if (constants.count(n)) throw ValidationError(i, "'" + n + "' is a constant, expected an unknown" + where);
        throw ValidationError(i, "undeclared unknown '" + n + "'" + where);
      }
      return it->second;
    };
    auto constant = [&](const std::string &n) {
      auto it = constants.find(n);
      if (it == constants.end()) {
        if (unknown_index.count(n)) throw ValidationError(i, "'" + n + "' is an unknown, expected a constant" + where);
        throw ValidationError(i, "undeclared constant '" + n + "'" + where);
      }
      return it->second;
    };
    Equation<T> eq;
    eq.left = unknown(de.first.unknown);
    eq.eps = de.first.sigma;
    eq.right = unknown(de.second.unknown);
    eq.delta = de.second.sigma;
    const auto &xl = doc.unknowns[eq.left];
    const auto &xr = doc.unknowns[eq.right];
    eq.a = de.first.pre ? constant(*de.first.pre)
                        : Matrix<T>::identity(doc.kind, sigma_shape(xl.rows, xl.cols, eq.eps).first);
    if (de.first.post) eq.m = constant(*de.first.post);
    if (de.second.pre) eq.n = constant(*de.second.pre);
    eq.b = de.second.post ? constant(*de.second.post)
                          : Matrix<T>::identity(doc.kind, sigma_shape(xr.rows, xr.cols, eq.delta).second);
    eq.c = constant(de.rhs);
    sys.equations.push_back(std::move(eq));
  }
  try {
    validate(sys);
  } catch (const ValidationError &e) {
    throw ValidationError(e.equation(), strip_equation_prefix(e.what()) + suffix_for(doc.equations[e.equation()]));
  }
  return sys;
}

template <class T> SystemDocument from_system(const EquationSystem<T> &sys) {
  SystemDocument doc;
  doc.kind = sys.kind;
  doc.unknowns = sys.unknowns;
  std::set<std::string> taken;
  for (const auto &u : sys.unknowns) taken.insert(u.name);
  auto add = [&](const std::string &base, const Matrix<T> &m) {
    std::string n = base;
    while (taken.count(n) || is_reserved(n)) n += "_";
    taken.insert(n);
    doc.constants.push_back({n, m.rows(), m.cols(), doc_entries(m)});
    return n;
  };
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto &eq = sys.equations[i];
    const auto k = std::to_string(i + 1);
    DocEquation de;
    de.first.pre = add("A" + k, eq.a);
    de.first.unknown = sys.unknowns[eq.left].name;
    de.first.sigma = eq.eps;
    if (eq.m) de.first.post = add("M" + k, *eq.m);
    if (eq.n) de.second.pre = add("N" + k, *eq.n);
    de.second.unknown = sys.unknowns[eq.right].name;
    de.second.sigma = eq.delta;
    de.second.post = add("B" + k, eq.b);
    de.rhs = add("C" + k, eq.c);
    doc.equations.push_back(std::move(de));
  }
  return doc;
}

template <class T> std::string print_certificate(ScalarKind kind, const Thm1Certificate<T> &cert) {
  ojson j;
  j["theorem"] = 1;
  j["field"] = kind_name(kind);
  j["p"] = ojson::array();
  for (const auto &p : cert.p) j["p"].push_back(partitioned_json(p));
  return j.dump(2) + "\n";
}

template <class T> std::string print_certificate(ScalarKind kind, const Thm2Certificate<T> &cert) {
  ojson j;
  j["theorem"] = 2;
  j["field"] = kind_name(kind);
  for (auto [key, list] : {std::pair{"p", &cert.p}, std::pair{"q", &cert.q}, std::pair{"r", &cert.r}}) {
    j[key] = ojson::array();
    for (const auto &p : *list) j[key].push_back(partitioned_json(p));
  }
  return j.dump(2) + "\n";
}

template <class T> AnyCertificate<T> parse_certificate(std::string_view text) {
  const auto j = parse_json_text(text);
  AnyCertificate<T> out;
  const auto &th = field(j, "theorem", "certificate");
  if (!th.is_number_integer() || (th.get<int>() != 1 && th.get<int>() != 2))
    schema_error("theorem", "expected 1 or 2");
  out.theorem = th.get<int>();
  try {
    out.kind = kind_from_name(get_string(field(j, "field", "certificate"), "field"));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    schema_error("field", e.what());
  }
  auto list = [&](const char *key) {
    const auto &arr = field(j, key, "certificate");
    if (!arr.is_array()) schema_error(key, "expected an array");
    std::vector<Partitioned<T>> v;
    for (std::size_t i = 0; i < arr.size(); ++i)
      v.push_back(partitioned_from_json<T>(arr[i], out.kind, std::string(key) + "[" + std::to_string(i) + "]"));
    return v;
  };
  if (out.theorem == 1) {
    out.thm1.p = list("p");
  } else {
    out.thm2.p = list("p");
    out.thm2.q = list("q");
    out.thm2.r = list("r");
  }
  return out;
}

template <class T> std::string print_solve_report(const EquationSystem<T> &sys, const SolveReport<T> &rep) {
  ojson j;
  const bool ok = rep.status == SolveStatus::Solvable;
  j["status"] = ok ? "solvable" : "inconsistent";
  j["rank_m"] = rep.rank_m;
  j["rank_aug"] = rep.rank_aug;
  j["max_abs_pivot"] = rep.pivots.max_abs_pivot;
  j["min_accepted_pivot"] = rep.pivots.min_accepted_pivot;
  if (ok) {
    j["residual"] = *rep.residual;
    j["solution"] = ojson::array();
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
      const auto &x = (*rep.solution)[k];
      j["solution"].push_back(
          {{"name", sys.unknowns[k].name}, {"rows", x.rows()}, {"cols", x.cols()}, {"data", matrix_json(x)}});
    }
  }
  return j.dump(2) + "\n";
}

template <class T>
std::string print_solution(const EquationSystem<T> &sys, const std::vector<Matrix<T>> &sol, double residual) {
  ojson j;
  j["residual"] = residual;
  j["solution"] = ojson::array();
  for (std::size_t k = 0; k < sys.unknowns.size(); ++k)
    j["solution"].push_back(
        {{"name", sys.unknowns[k].name}, {"rows", sol[k].rows()}, {"cols", sol[k].cols()}, {"data", matrix_json(sol[k])}});
  return j.dump(2) + "\n";
}

#define ROTH_INSTANTIATE(T)                                                                              \
  template EquationSystem<T> to_system(const SystemDocument &, bool);                                    \
  template SystemDocument from_system(const EquationSystem<T> &);                                        \
  template std::string print_certificate(ScalarKind, const Thm1Certificate<T> &);                        \
  template std::string print_certificate(ScalarKind, const Thm2Certificate<T> &);                        \
  template AnyCertificate<T> parse_certificate(std::string_view);                                        \
  template std::string print_solve_report(const EquationSystem<T> &, const SolveReport<T> &);            \
  template std::string print_solution(const EquationSystem<T> &, const std::vector<Matrix<T>> &, double);

ROTH_INSTANTIATE(double)
ROTH_INSTANTIATE(Rational)

} // namespace roth
