#include "homascend/session.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <set>
#include <string_view>
#include <thread>

#include "homascend/ascent.hpp"
#include "homascend/extended.hpp"

namespace homascend {

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& msg)
    : std::runtime_error(msg), line_(line), col_(col) {}

namespace {

// ---------------------------------------------------------------------------
// Tokens

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
  std::string text;
};

// Whitespace-separated words; bracketed groups stay together.
std::vector<Token> tokenize(const std::string& s, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    int depth = 0;
    while (i < s.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '[' || s[i] == '(') ++depth;
      if (s[i] == ']' || s[i] == ')') {
        if (--depth < 0) throw ParseError(line, i + 1, "unbalanced bracket");
      }
      ++i;
    }
    if (depth != 0) throw ParseError(line, start + 1, "unbalanced bracket");
    out.push_back({s.substr(start, i - start), start + 1});
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Items of "[a, b, [c, d]]" split at top-level commas.
std::vector<std::string> list_items(const Token& t, std::size_t line) {
  const std::string& s = t.text;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError(line, t.col, "expected a [list]");
  std::vector<std::string> out;
  std::string inner = s.substr(1, s.size() - 2);
  if (trim(inner).empty()) return out;
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  for (const auto& x : out)
    if (x.empty()) throw ParseError(line, t.col, "empty list item");
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// ---------------------------------------------------------------------------
// Expressions: sums of products of identifiers and numbers, with ^ and
// division by numeric literals.

template <class Ring>
class ExprParser {
 public:
  using V = typename Ring::V;
  ExprParser(const Ring& r, const std::string& s, std::size_t line, std::size_t col)
      : r_(r), s_(s), line_(line), col_(col) {}

  V parse() {
    V v = sum();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_ + p_, msg); }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  V sum() {
    V v = eat('-') ? r_.neg(product()) : (eat('+'), product());
    for (;;) {
      if (eat('+'))
        v = r_.add(v, product());
      else if (eat('-'))
        v = r_.sub(v, product());
      else
        return v;
    }
  }
  V product() {
    V v = power();
    for (;;) {
      if (eat('*')) {
        v = r_.mul(v, power());
      } else if (eat('/')) {
        Integer d = integer();
        if (d == 0) fail("division by zero");
        v = r_.mul(v, r_.scalar(r_.field().inv(r_.field().from_integer(d))));
      } else {
        return v;
      }
    }
  }
  V power() {
    V v = atom();
    if (eat('^')) {
      Integer e = integer();
      if (e > 64) fail("exponent too large");
      V acc = r_.one();
      for (long i = 0; i < e.get_si(); ++i) acc = r_.mul(acc, v);
      return acc;
    }
    return v;
  }
  Integer integer() {
    skip();
    std::size_t a = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (a == p_) fail("expected an integer");
    return Integer(s_.substr(a, p_ - a));
  }
  V atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      V v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[p_]))) return r_.scalar(r_.field().from_integer(integer()));
    std::size_t a = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
    if (a == p_) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    std::string name = s_.substr(a, p_ - a);
    auto v = r_.ident(name);
    if (!v) {
      p_ = a;
      fail("unknown name '" + name + "'");
    }
    return *v;
  }

  const Ring& r_;
  std::string s_;
  std::size_t line_, col_, p_ = 0;
};

std::optional<Elem> field_generator(const Field& f, const std::string& name) {
  if (f.kind() == FieldKind::SimpleExtension && f.generator_name() == name) return f.generator();
  return std::nullopt;
}

struct AlgebraRing {
  using V = Vec;
  Algebra a;
  const Field& field() const { return a->field(); }
  V one() const { return a->unit(); }
  V add(const V& x, const V& y) const { return a->add(x, y); }
  V sub(const V& x, const V& y) const { return a->add(x, neg(y)); }
  V neg(const V& x) const { return a->scale(x, field().from_int(-1)); }
  V mul(const V& x, const V& y) const { return a->mul(x, y); }
  V scalar(const Elem& c) const { return a->from_scalar(c); }
  std::optional<V> ident(const std::string& n) const {
    if (auto v = a->named_element(n)) return v;
    if (auto g = field_generator(field(), n)) return scalar(*g);
    return std::nullopt;
  }
};

struct UniRing {
  using V = Poly;
  PolyRing r;
  std::string var;
  const Field& field() const { return r.field(); }
  V one() const { return r.one(); }
  V add(const V& x, const V& y) const { return r.add(x, y); }
  V sub(const V& x, const V& y) const { return r.sub(x, y); }
  V neg(const V& x) const { return r.neg(x); }
  V mul(const V& x, const V& y) const { return r.mul(x, y); }
  V scalar(const Elem& c) const { return r.constant(c); }
  std::optional<V> ident(const std::string& n) const {
    if (n == var) return r.x();
    if (auto g = field_generator(field(), n)) return scalar(*g);
    return std::nullopt;
  }
};

struct MultiRing {
  using V = std::map<std::vector<int>, Elem>;
  Field f;
  std::vector<std::string> vars;
  const Field& field() const { return f; }
  V clean(V v) const {
    for (auto it = v.begin(); it != v.end();) it = f.is_zero(it->second) ? v.erase(it) : std::next(it);
    return v;
  }
  V one() const { return scalar(f.one()); }
  V add(const V& x, const V& y) const {
    V out = x;
    for (const auto& [k, c] : y) {
      auto it = out.find(k);
      if (it == out.end())
        out.emplace(k, c);
      else
        it->second = f.add(it->second, c);
    }
    return clean(out);
  }
  V neg(const V& x) const {
    V out;
    for (const auto& [k, c] : x) out.emplace(k, f.neg(c));
    return out;
  }
  V sub(const V& x, const V& y) const { return add(x, neg(y)); }
  V mul(const V& x, const V& y) const {
    V out;
    for (const auto& [a, c] : x)
      for (const auto& [b, d] : y) {
        std::vector<int> e(vars.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
        out = add(out, V{{e, f.mul(c, d)}});
      }
    return out;
  }
  V scalar(const Elem& c) const { return clean(V{{std::vector<int>(vars.size(), 0), c}}); }
  std::optional<V> ident(const std::string& n) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == n) {
        std::vector<int> e(vars.size(), 0);
        e[i] = 1;
        return V{{e, f.one()}};
      }
    if (auto g = field_generator(f, n)) return scalar(*g);
    return std::nullopt;
  }
};

struct ScalarRing {
  using V = Elem;
  Field f;
  const Field& field() const { return f; }
  V one() const { return f.one(); }
  V add(const V& x, const V& y) const { return f.add(x, y); }
  V sub(const V& x, const V& y) const { return f.sub(x, y); }
  V neg(const V& x) const { return f.neg(x); }
  V mul(const V& x, const V& y) const { return f.mul(x, y); }
  V scalar(const Elem& c) const { return c; }
  std::optional<V> ident(const std::string& n) const { return field_generator(f, n); }
};

template <class Ring>
typename Ring::V parse_expr(const Ring& r, const std::string& s, std::size_t line, std::size_t col) {
  return ExprParser<Ring>(r, s, line, col).parse();
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(Session& s) : s_(s) {}

  void line(const Line& l) {
    l_ = &l;
    const auto& t = l.tokens;
    const std::string& head = t[0].text;
    if (head == "cmd") return command();
    if (head == "config") return config();
    static const std::set<std::string> kinds{"field", "algebra", "map", "module", "pid", "complex"};
    if (!kinds.count(head)) fail(t[0], "unknown declaration '" + head + "'");
    if (t.size() < 4 || t[2].text != "=") fail(t[0], "expected '" + head + " NAME = ...'");
    const std::string& name = t[1].text;
    if (!is_identifier(name)) fail(t[1], "invalid identifier '" + name + "'");
    if (std::find(s_.order.begin(), s_.order.end(), name) != s_.order.end())
      fail(t[1], "identifier '" + name + "' already declared");
    try {
      if (head == "field") s_.fields[name] = field();
      if (head == "algebra") s_.algebras[name] = algebra();
      if (head == "map") s_.maps[name] = map();
      if (head == "module") s_.modules[name] = module();
      if (head == "pid") s_.pid_modules[name] = pid();
      if (head == "complex") s_.complexes[name] = complex();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(t[3], std::string("invariant violation: ") + e.what());
    }
    s_.order.push_back(name);
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(l_->number, t.col, msg); }
  const Token& tok(std::size_t i) const {
    if (i >= l_->tokens.size()) {
      const Token& last = l_->tokens.back();
      throw ParseError(l_->number, last.col + last.text.size(), "unexpected end of line");
    }
    return l_->tokens[i];
  }
  void expect(std::size_t i, const std::string& word) const {
    if (tok(i).text != word) fail(tok(i), "expected '" + word + "'");
  }
  void end(std::size_t i) const {
    if (i < l_->tokens.size()) fail(l_->tokens[i], "unexpected '" + l_->tokens[i].text + "'");
  }
  template <class T>
  const T& lookup(const std::map<std::string, T>& m, std::size_t i, const char* kind) const {
    auto it = m.find(tok(i).text);
    if (it == m.end()) fail(tok(i), std::string("unknown ") + kind + " '" + tok(i).text + "'");
    return it->second;
  }
  long number(std::size_t i, long lo, long hi) const {
    const std::string& s = tok(i).text;
    char* endp = nullptr;
    long v = std::strtol(s.c_str(), &endp, 10);
    if (s.empty() || *endp != '\0') fail(tok(i), "expected an integer");
    if (v < lo || v > hi)
      fail(tok(i), "value " + s + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  Field field() {
    const std::string& kind = tok(3).text;
    if (kind == "rationals") {
      end(4);
      return Field::rationals();
    }
    if (kind == "prime") {
      long p = number(4, 2, 1000003);
      end(5);
      for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(tok(4), std::to_string(p) + " is not prime");
      return Field::prime(p);
    }
    if (kind == "extend") {
      const Field& base = lookup(s_.fields, 4, "field");
      expect(5, "by");
      const Token& pt = tok(6);
      std::string var;
      for (std::size_t i = 0; i < pt.text.size(); ++i)
        if (std::isalpha(static_cast<unsigned char>(pt.text[i]))) {
          std::size_t j = i;
          while (j < pt.text.size() && (std::isalnum(static_cast<unsigned char>(pt.text[j])) || pt.text[j] == '_')) ++j;
          var = pt.text.substr(i, j - i);
          break;
        }
      if (var.empty()) fail(pt, "expected a polynomial in one variable");
      Poly p = parse_expr(UniRing{PolyRing(base), var}, pt.text, l_->number, pt.col);
      std::string gen = var;
      std::size_t next = 7;
      if (next < l_->tokens.size()) {
        expect(next, "as");
        gen = tok(next + 1).text;
        if (!is_identifier(gen)) fail(tok(next + 1), "invalid generator name");
        next += 2;
      }
      end(next);
      return Field::extension(base, p.c, gen);
    }
    fail(tok(3), "unknown field constructor '" + kind + "'");
  }

  Algebra algebra() {
    const std::string& kind = tok(3).text;
    if (kind == "quotient") {
      const Field& f = lookup(s_.fields, 4, "field");
      std::vector<std::string> vars = list_items(tok(5), l_->number);
      for (const auto& v : vars)
        if (!is_identifier(v)) fail(tok(5), "invalid variable '" + v + "'");
      expect(6, "rels");
      std::vector<MPoly> rels;
      MultiRing mr{f, vars};
      for (const auto& item : list_items(tok(7), l_->number)) {
        auto p = parse_expr(mr, item, l_->number, tok(7).col);
        MPoly mp;
        for (const auto& [e, c] : p) mp.terms.emplace_back(e, c);
        rels.push_back(std::move(mp));
      }
      expect(8, "trunc");
      int trunc = static_cast<int>(number(9, 1, 64));
      end(10);
      return LocalAlgebra::from_presentation(f, vars, rels, trunc);
    }
    if (kind == "field") {
      const Field& f = lookup(s_.fields, 4, "field");
      end(5);
      return LocalAlgebra::from_presentation(f, {}, {}, 1);
    }
    if (kind == "target" || kind == "source") {
      const AlgebraMap& m = lookup(s_.maps, 4, "map");
      end(5);
      return kind == "target" ? m.target() : m.source();
    }
    fail(tok(3), "unknown algebra constructor '" + kind + "'");
  }

  Vec element(const Algebra& a, const std::string& s, const Token& t) const {
    return parse_expr(AlgebraRing{a}, s, l_->number, t.col);
  }

  AlgebraMap map() {
    const std::string& kind = tok(3).text;
    if (kind == "tensor_extension") {
      const Field& f = lookup(s_.fields, 4, "field");
      const Algebra& a = lookup(s_.algebras, 5, "algebra");
      end(6);
      return algebra_tensor_extension(f, a).second;
    }
    if (kind == "identity") {
      const Algebra& a = lookup(s_.algebras, 4, "algebra");
      end(5);
      return AlgebraMap::identity(a);
    }
    if (kind == "compose") {
      const AlgebraMap& g = lookup(s_.maps, 4, "map");
      const AlgebraMap& h = lookup(s_.maps, 5, "map");
      end(6);
      return compose(g, h);
    }
    const Algebra& src = lookup(s_.algebras, 4, "algebra");
    const Algebra& tgt = lookup(s_.algebras, 5, "algebra");
    if (kind == "names") {
      end(6);
      return AlgebraMap::by_names(src, tgt);
    }
    if (kind == "images") {
      std::vector<std::pair<Vec, Vec>> images;
      for (const auto& item : list_items(tok(6), l_->number)) {
        auto arrow = item.find("->");
        if (arrow == std::string::npos) fail(tok(6), "expected 'name -> expression'");
        images.emplace_back(element(src, trim(item.substr(0, arrow)), tok(6)),
                            element(tgt, trim(item.substr(arrow + 2)), tok(6)));
      }
      end(7);
      return AlgebraMap::from_images(src, tgt, images);
    }
    if (kind == "matrix") {
      auto rows = list_items(tok(6), l_->number);
      end(7);
      if (rows.size() != tgt->dim()) fail(tok(6), "matrix needs dim(target) rows");
      Mat m(src->field(), tgt->dim(), src->dim());
      ScalarRing sr{src->field()};
      for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cells = list_items(Token{rows[i], tok(6).col}, l_->number);
        if (cells.size() != src->dim()) fail(tok(6), "matrix needs dim(source) columns");
        for (std::size_t j = 0; j < cells.size(); ++j) m.at(i, j) = parse_expr(sr, cells[j], l_->number, tok(6).col);
      }
      return AlgebraMap(src, tgt, m);
    }
    fail(tok(3), "unknown map constructor '" + kind + "'");
  }

  FModule module() {
    const std::string& kind = tok(3).text;
    if (kind == "present") {
      const Algebra& a = lookup(s_.algebras, 4, "algebra");
      expect(5, "cols");
      std::size_t n = static_cast<std::size_t>(number(6, 0, 64));
      expect(7, "rels");
      std::vector<Vec> rels;
      for (const auto& row : list_items(tok(8), l_->number)) {
        auto cells = list_items(Token{row, tok(8).col}, l_->number);
        if (cells.size() != n) fail(tok(8), "relation rows need one entry per column");
        Vec v;
        for (const auto& c : cells) {
          Vec e = element(a, c, tok(8));
          v.insert(v.end(), e.begin(), e.end());
        }
        rels.push_back(std::move(v));
      }
      end(9);
      return FModule::presented(a, n, rels);
    }
    if (kind == "free") {
      const Algebra& a = lookup(s_.algebras, 4, "algebra");
      std::size_t n = static_cast<std::size_t>(number(5, 0, 64));
      end(6);
      return FModule::free(a, n);
    }
    if (kind == "residue") {
      const Algebra& a = lookup(s_.algebras, 4, "algebra");
      end(5);
      return FModule::residue(a);
    }
    if (kind == "cyclic") {
      const Algebra& a = lookup(s_.algebras, 4, "algebra");
      std::vector<Vec> gens;
      for (const auto& item : list_items(tok(5), l_->number)) gens.push_back(element(a, item, tok(5)));
      end(6);
      return FModule::cyclic(a, gens);
    }
    if (kind == "restrict" || kind == "base_change") {
      const AlgebraMap& phi = lookup(s_.maps, 4, "map");
      const FModule& m = lookup(s_.modules, 5, "module");
      end(6);
      if (kind == "restrict") {
        if (m.algebra()->dim() != phi.target()->dim()) fail(tok(5), "module is not over the target of the map");
        return homascend::restrict(phi, m);
      }
      if (m.algebra()->dim() != phi.source()->dim()) fail(tok(5), "module is not over the source of the map");
      return base_change(phi, m).module;
    }
    if (kind == "target") {
      const AlgebraMap& phi = lookup(s_.maps, 4, "map");
      end(5);
      return target_as_source_module(phi);
    }
    if (kind == "sum") {
      std::vector<FModule> parts;
      for (std::size_t i = 4; i < l_->tokens.size(); ++i) parts.push_back(lookup(s_.modules, i, "module"));
      if (parts.empty()) fail(tok(4), "sum needs at least one module");
      for (const auto& p : parts)
        if (p.algebra() != parts[0].algebra()) fail(tok(4), "summands over different algebras");
      return direct_sum(parts, parts[0].algebra());
    }
    if (kind == "power") {
      const FModule& m = lookup(s_.modules, 4, "module");
      std::size_t r = static_cast<std::size_t>(number(5, 0, 64));
      end(6);
      return power(m, r);
    }
    fail(tok(3), "unknown module constructor '" + kind + "'");
  }

  PIDModule pid() {
    const std::string& kind = tok(3).text;
    if (kind == "invariants") {
      const std::string& side = tok(4).text;
      if (side != "R" && side != "S") fail(tok(4), "side must be R or S");
      std::size_t a = static_cast<std::size_t>(number(5, 0, 64));
      std::vector<int> e;
      for (const auto& item : list_items(tok(6), l_->number)) {
        char* endp = nullptr;
        long v = std::strtol(item.c_str(), &endp, 10);
        if (*endp != '\0' || v <= 0 || v > 1000) fail(tok(6), "exponents must be positive integers");
        e.push_back(static_cast<int>(v));
      }
      end(7);
      return PIDModule::make(a, e, side == "R" ? Side::OverR : Side::OverS);
    }
    if (kind == "present") {
      const Field& f = lookup(s_.fields, 4, "field");
      expect(5, "cols");
      std::size_t g = static_cast<std::size_t>(number(6, 0, 64));
      expect(7, "rels");
      auto rows = list_items(tok(8), l_->number);
      end(9);
      PIDPresentation p{g, PolyMat(f, rows.size(), g)};
      UniRing ur{PolyRing(f), "x"};
      for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cells = list_items(Token{rows[i], tok(8).col}, l_->number);
        if (cells.size() != g) fail(tok(8), "relation rows need one entry per generator");
        for (std::size_t j = 0; j < g; ++j) p.relations.at(i, j) = parse_expr(ur, cells[j], l_->number, tok(8).col);
      }
      return classify(p);
    }
    fail(tok(3), "unknown pid constructor '" + kind + "'");
  }

  BoundedComplex complex() {
    const std::string& kind = tok(3).text;
    if (kind == "koszul") {
      const Algebra& a = lookup(s_.algebras, 4, "algebra");
      end(5);
      return koszul_on_generators(a);
    }
    if (kind == "module") {
      const FModule& m = lookup(s_.modules, 4, "module");
      int deg = 0;
      if (l_->tokens.size() > 5) {
        expect(5, "degree");
        deg = static_cast<int>(number(6, -64, 64));
        end(7);
      } else {
        end(5);
      }
      return BoundedComplex::concentrated(m, deg);
    }
    fail(tok(3), "unknown complex constructor '" + kind + "'");
  }

  void config() {
    const std::string& key = tok(1).text;
    if (key == "seed") {
      const std::string& s = tok(2).text;
      char* endp = nullptr;
      unsigned long long v = std::strtoull(s.c_str(), &endp, 10);
      if (s.empty() || *endp != '\0' || s[0] == '-') fail(tok(2), "seed must be a non-negative integer");
      s_.config.seed = v;
    } else if (key == "ext_range") {
      s_.config.ext_range = static_cast<std::size_t>(number(2, 0, 12));
    } else if (key == "precision") {
      s_.config.precision = static_cast<int>(number(2, 1, 64));
    } else if (key == "search_bound") {
      s_.config.search_bound = static_cast<std::uint64_t>(number(2, 1, 1L << 30));
    } else if (key == "dim_cap") {
      s_.config.dim_cap = static_cast<std::size_t>(number(2, 1, 16));
    } else {
      fail(tok(1), "unknown config key '" + key + "'");
    }
    end(3);
  }

  void command();

 public:
  static BoundedComplex koszul_on_generators(const Algebra& a) {
    std::vector<Vec> xs;
    for (const auto& v : a->variables()) xs.push_back(*a->named_element(v));
    if (xs.empty() && a->radical().cols() > 0) {
      FModule f = FModule::free(a, 1);
      Mat g = minimal_generators(f, a->radical());
      for (std::size_t j = 0; j < g.cols(); ++j) {
        Vec v(g.rows());
        for (std::size_t i = 0; i < g.rows(); ++i) v[i] = g.at(i, j);
        xs.push_back(std::move(v));
      }
    }
    return koszul(a, xs);
  }

 private:
  Session& s_;
  const Line* l_ = nullptr;
};

// ---------------------------------------------------------------------------
// Commands

struct Ctx {
  const Session& s;
  const Command& c;
  std::uint64_t seed;
  CancelToken tok;
  std::vector<std::string>* asserted;

  [[noreturn]] void usage(const std::string& msg) const { throw std::invalid_argument(c.op + ": " + msg); }
  std::size_t argc() const { return c.args.size(); }
  const std::string& arg(std::size_t i) const {
    if (i >= c.args.size()) usage("missing argument " + std::to_string(i + 1));
    return c.args[i];
  }
  template <class T>
  const T& get(const std::map<std::string, T>& m, std::size_t i, const char* kind) const {
    auto it = m.find(arg(i));
    if (it == m.end()) usage(std::string("unknown ") + kind + " '" + arg(i) + "'");
    return it->second;
  }
  const FModule& module(std::size_t i) const { return get(s.modules, i, "module"); }
  const AlgebraMap& map(std::size_t i) const { return get(s.maps, i, "map"); }
  const Algebra& algebra(std::size_t i) const { return get(s.algebras, i, "algebra"); }
  const PIDModule& pid(std::size_t i) const { return get(s.pid_modules, i, "pid module"); }
  const BoundedComplex& complex(std::size_t i) const { return get(s.complexes, i, "complex"); }
  long integer(std::size_t i, long lo, long hi) const {
    const std::string& a = arg(i);
    char* endp = nullptr;
    long v = std::strtol(a.c_str(), &endp, 10);
    if (a.empty() || *endp != '\0' || v < lo || v > hi)
      usage("argument '" + a + "' must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }
  std::size_t range_arg(std::size_t i) const {
    return argc() > i ? static_cast<std::size_t>(integer(i, 0, 12)) : s.config.ext_range;
  }
  void max_args(std::size_t n) const {
    if (argc() > n) usage("too many arguments");
  }
  // key=value options after the positional arguments
  std::map<std::string, long> options(std::size_t from) const {
    std::map<std::string, long> out;
    for (std::size_t i = from; i < argc(); ++i) {
      auto eq = arg(i).find('=');
      if (eq == std::string::npos) usage("expected key=value, got '" + arg(i) + "'");
      std::string v = arg(i).substr(eq + 1);
      char* endp = nullptr;
      long x = std::strtol(v.c_str(), &endp, 10);
      if (v.empty() || *endp != '\0') usage("option value must be an integer: '" + arg(i) + "'");
      out[arg(i).substr(0, eq)] = x;
    }
    return out;
  }
  void same_algebra(const FModule& a, const FModule& b) const {
    if (a.algebra() != b.algebra() && a.algebra()->dim() != b.algebra()->dim())
      usage("modules over different algebras");
  }
  void over_source(const AlgebraMap& phi, const FModule& m) const {
    if (m.algebra()->dim() != phi.source()->dim()) usage("module is not over the source of the map");
  }
  void over_target(const AlgebraMap& phi, const FModule& m) const {
    if (m.algebra()->dim() != phi.target()->dim()) usage("module is not over the target of the map");
  }
  void dagger(const AlgebraMap& phi) const {
    auto d = check_dagger(phi);
    if (!d.ms_equals_n) usage("hypothesis (dagger) fails: m_R S != n");
    if (!d.residue_iso) usage("hypothesis (dagger) fails: residue fields differ");
  }
};

std::vector<std::int64_t> ints(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }
std::vector<std::int64_t> ints(const std::vector<int>& v) { return {v.begin(), v.end()}; }
std::vector<std::int64_t> bits(const std::vector<bool>& v) {
  std::vector<std::int64_t> out;
  for (bool b : v) out.push_back(b ? 1 : 0);
  return out;
}

void assert_that(bool cond, const std::string& witness) {
  if (!cond) throw std::logic_error(witness);
}

void put_pid(Facts& f, const std::string& key, const PIDModule& m) {
  f.set(key, m.to_string());
  f.set(key + "-free-rank", m.free_rank);
  f.set(key + "-exponents", ints(m.exponents));
}

using Handler = std::function<Facts(const Ctx&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"algebra",
       [](const Ctx& c) {
         c.max_args(1);
         const Algebra& a = c.algebra(0);
         Facts f;
         f.set("dim", a->dim());
         f.set("residue-degree", a->residue_degree());
         f.set("nilpotency", a->nilpotency());
         std::string labels;
         for (const auto& l : a->labels()) labels += (labels.empty() ? "" : " ") + l;
         f.set("basis", labels);
         return f;
       }},
      {"dagger",
       [](const Ctx& c) {
         c.max_args(1);
         auto d = check_dagger(c.map(0));
         Facts f;
         f.set("ms-equals-n", d.ms_equals_n);
         f.set("residue-iso", d.residue_iso);
         f.set("dagger", d.dagger());
         return f;
       }},
      {"flat",
       [](const Ctx& c) {
         c.max_args(1);
         auto r = is_flat(c.map(0));
         Facts f;
         f.set("flat", r.flat);
         f.set("free-rank", r.rank);
         return f;
       }},
      {"hom",
       [](const Ctx& c) {
         c.max_args(2);
         c.same_algebra(c.module(0), c.module(1));
         Facts f;
         f.set("dim", hom_space(c.module(0), c.module(1)).dim());
         return f;
       }},
      {"ext",
       [](const Ctx& c) {
         c.max_args(3);
         const FModule &m = c.module(0), &n = c.module(1);
         c.same_algebra(m, n);
         std::size_t l = c.range_arg(2);
         Resolution res = minimal_resolution(m, l + 1, c.tok);
         std::vector<std::size_t> dims;
         for (std::size_t i = 0; i <= l; ++i) dims.push_back(ext_from(res, n, i).dim);
         Facts f;
         f.set("ext-dims", ints(dims));
         return f;
       }},
      {"betti",
       [](const Ctx& c) {
         c.max_args(2);
         Resolution res = minimal_resolution(c.module(0), c.range_arg(1), c.tok);
         Facts f;
         f.set("betti", ints(res.betti));
         return f;
       }},
      {"annihilator",
       [](const Ctx& c) {
         c.max_args(1);
         auto a = ann_supp(c.module(0));
         Facts f;
         f.set("dim", a.annihilator.cols());
         f.set("in-support", a.in_support);
         return f;
       }},
      {"iso",
       [](const Ctx& c) {
         c.max_args(2);
         c.same_algebra(c.module(0), c.module(1));
         auto r = is_isomorphic(c.module(0), c.module(1), c.seed, c.tok);
         Facts f;
         f.set("isomorphic", r.isomorphic);
         f.set("certified", r.certified);
         if (r.witness) f.set("witness", r.witness->to_string());
         return f;
       }},
      {"krs",
       [](const Ctx& c) {
         c.max_args(1);
         auto d = krs_decompose(c.module(0), c.seed, c.tok);
         std::vector<std::size_t> dims;
         for (const auto& p : d.pieces) dims.push_back(p.module.dim());
         Facts f;
         f.set("pieces", d.pieces.size());
         f.set("dims", ints(dims));
         f.set("certified", d.certified());
         return f;
       }},
      {"ascend",
       [](const Ctx& c) {
         c.max_args(3);
         c.over_source(c.map(0), c.module(1));
         return ascent_conditions(c.map(0), c.module(1), c.range_arg(2), c.tok).facts();
       }},
      {"compatible",
       [](const Ctx& c) {
         c.max_args(3);
         c.over_source(c.map(0), c.module(1));
         c.dagger(c.map(0));
         return compatibility_report(c.map(0), c.module(1), c.range_arg(2), c.tok).facts();
       }},
      {"retract",
       [](const Ctx& c) {
         c.max_args(1);
         auto r = ring_retract(c.map(0), c.s.config.search_bound, c.tok);
         Facts f;
         f.set("retract", to_string(r.verdict));
         f.set("retract-method", r.method);
         f.set("retract-candidates", r.candidates_tried);
         return f;
       }},
      {"vmax",
       [](const Ctx& c) {
         c.max_args(3);
         const AlgebraMap& phi = c.map(0);
         const FModule& n = c.module(1);
         c.over_target(phi, n);
         c.dagger(phi);
         Token t{c.arg(2), 1};
         auto cols = list_items(t, c.c.line);
         Mat m(n.field(), n.dim(), 0);
         ScalarRing sr{n.field()};
         for (const auto& col : cols) {
           auto cells = list_items(Token{col, 1}, c.c.line);
           if (cells.size() != n.dim()) c.usage("each vector needs dim(N) coordinates");
           Vec v;
           for (const auto& x : cells) v.push_back(parse_expr(sr, x, c.c.line, 1));
           m = hcat(m, Mat::column(n.field(), v));
         }
         FModule rn = homascend::restrict(phi, n);
         Mat w = rn.generated(m);
         auto r = vmax(phi, n, w);
         Facts f;
         f.set("dim-m", w.cols());
         f.set("dim-definitional", r.definitional.cols());
         f.set("dim-saturation", r.saturation.cols());
         f.set("dim-eps-image", r.eps_image.cols());
         f.set("agree", r.agree);
         assert_that(r.agree, "vmax: the three descriptions of V(M) differ");
         return f;
       }},
      {"extended",
       [](const Ctx& c) {
         c.max_args(2);
         c.over_target(c.map(0), c.module(1));
         auto e = FiniteExtension::make(c.map(0));
         auto r = is_extended(e, c.module(1), c.seed, c.tok);
         Facts f;
         f.set("extended", r.extended());
         f.set("certified", r.certified);
         f.set("candidates", r.candidates);
         if (r.witness) {
           f.set("witness-dim", r.witness->m.dim());
           f.set("witness-fingerprint", ints(fingerprint(r.witness->m)));
         }
         if (separability_idempotent(e)) {
           auto w = summand_of_extended(e, c.module(1));
           f.set("summand-of-extended", true);
           f.set("summand-ambient-dim", w.tensor.module.dim());
         } else {
           f.set("summand-of-extended", false);
         }
         return f;
       }},
      {"separable",
       [](const Ctx& c) {
         c.max_args(1);
         auto e = FiniteExtension::make(c.map(0));
         auto sep = separability_idempotent(e);
         Facts f;
         f.set("separable", sep.has_value());
         if (sep) {
           TensorSquare t(e);
           const Field& k = e.target()->field();
           f.set("unique", sep->unique);
           f.set("idempotent", vec_equal(k, t.mul(sep->e, sep->e), sep->e));
           Mat mu = t.mu() * Mat::column(k, sep->e);
           f.set("mu-is-one", mu == Mat::column(k, e.target()->unit()));
         }
         return f;
       }},
      {"sum_extended",
       [](const Ctx& c) {
         c.max_args(3);
         const AlgebraMap& phi = c.map(0);
         const FModule &n1 = c.module(1), &n2 = c.module(2);
         c.over_target(phi, n1);
         c.over_target(phi, n2);
         auto e = FiniteExtension::make(phi);
         auto r1 = is_extended(e, n1, c.seed, c.tok), r2 = is_extended(e, n2, c.seed, c.tok);
         auto r12 = is_extended(e, direct_sum(n1, n2), c.seed, c.tok);
         Facts f;
         f.set("n1-extended", r1.extended());
         f.set("n2-extended", r2.extended());
         f.set("sum-extended", r12.extended());
         const int known = r1.extended() + r2.extended() + r12.extended();
         if (known >= 2) {
           std::optional<ExtendedWitness> w1 = r1.witness, w2 = r2.witness, w12 = r12.witness;
           if (known == 3) w12.reset();
           auto t = two_of_three_sum(e, n1, n2, w1, w2, w12, c.seed);
           f.set("derived", t.derived);
           f.set("derived-dim", t.witness.m.dim());
         }
         const bool certified = r1.certified && r2.certified && r12.certified;
         f.set("certified", certified);
         if (certified) assert_that(known != 2, "two of N1, N2, N1 + N2 are extended but the third is not");
         return f;
       }},
      {"guralnick",
       [](const Ctx& c) {
         c.max_args(3);
         c.same_algebra(c.module(0), c.module(1));
         int t = static_cast<int>(c.integer(2, 1, 16));
         auto r = guralnick_levels(c.module(0), c.module(1), t, c.seed);
         Facts f;
         f.set("levels", bits(r.levels));
         f.set("divides", r.divides);
         return f;
       }},
      {"prop32",
       [](const Ctx& c) {
         c.max_args(3);
         const AlgebraMap& phi = c.map(0);
         c.over_source(phi, c.module(1));
         c.over_source(phi, c.module(2));
         auto e = FiniteExtension::make(phi);
         Prop32Data d;
         d.m1 = c.module(1);
         d.m2 = c.module(2);
         const std::size_t n = prop32_ext_dim(e, d.m1, d.m2);
         const Field& k = d.m1.field();
         std::vector<bool> in_image, extended;
         Prop32Report first;
         for (std::size_t j = 0; j <= n; ++j) {
           d.xi.assign(n, k.zero());
           if (j > 0) d.xi[j - 1] = k.one();
           auto r = prop32_finite(e, 1, d, c.seed);
           if (j == 0) first = r;
           in_image.push_back(r.in_alpha_image);
           extended.push_back(r.extended);
         }
         Facts f;
         f.set("ext-r-dim", first.ext_r_dim);
         f.set("ext-s-dim", first.ext_s_dim);
         f.set("beta-iso", first.beta_iso);
         f.set("obstruction-dim", first.obstruction_dim);
         f.set("classes-in-alpha-image", bits(in_image));
         f.set("classes-extended", bits(extended));
         return f;
       }},
      {"example37",
       [](const Ctx& c) {
         c.max_args(1);
         Example37 ex = example37();
         Elem v = parse_expr(ScalarRing{ex.ext}, c.arg(0), c.c.line, 1);
         auto r = is_extended(ex.e, example37_module(ex, v), c.seed, c.tok);
         auto m = matrix_equiv_1x1(ex, v);
         Facts f;
         f.set("c", ex.ext.to_string(v));
         f.set("extended", r.extended());
         f.set("certified", r.certified);
         f.set("matrix-equiv", m.equivalent);
         if (r.certified) assert_that(r.extended() == m.equivalent, "is_extended and matrix_equiv_1x1 disagree");
         return f;
       }},
      {"koszul",
       [](const Ctx& c) {
         c.max_args(1);
         const Algebra& a = c.algebra(0);
         BoundedComplex k = Parser::koszul_on_generators(a);
         std::vector<std::size_t> ranks, hdims;
         bool killed = true;
         for (int n = k.lo(); n <= k.hi(); ++n) {
           ranks.push_back(k.dim(n) / a->dim());
           Homology h = homology(k, n);
           hdims.push_back(h.module.dim());
           if (h.module.dim() && h.module.radical_image().cols() != 0) killed = false;
         }
         Facts f;
         f.set("ranks", ints(ranks));
         f.set("homology-dims", ints(hdims));
         f.set("m-kills-homology", killed);
         return f;
       }},
      {"homology",
       [](const Ctx& c) {
         c.max_args(1);
         const BoundedComplex& x = c.complex(0);
         std::vector<std::size_t> dims;
         for (int n = x.lo(); n <= x.hi(); ++n) dims.push_back(homology(x, n).module.dim());
         Facts f;
         f.set("lo", x.lo());
         f.set("homology-dims", ints(dims));
         f.set("exact", is_exact(x));
         return f;
       }},
      {"prop24",
       [](const Ctx& c) {
         c.max_args(1);
         const Algebra& a = c.algebra(0);
         BoundedComplex p = Parser::koszul_on_generators(a);
         FModule res = FModule::residue(a);
         BoundedComplex k = BoundedComplex::concentrated(res);
         QuotientModule q = quotient_module(FModule::free(a, 1), a->radical());
         ComplexMorphism aug(p, k, {{0, q.q.proj}});
         auto r1 = prop24_harness(aug, p);
         auto r2 = prop24_harness(ComplexMorphism::identity(p), p);
         Facts f;
         f.set("augmentation-hom-qis", r1.hom_qis);
         f.set("augmentation-qis", r1.alpha_qis);
         f.set("identity-hom-qis", r2.hom_qis);
         f.set("identity-qis", r2.alpha_qis);
         return f;
       }},
      {"prop110",
       [](const Ctx& c) {
         c.max_args(1);
         c.dagger(c.map(0));
         auto r = prop110_check(c.map(0));
         Facts f;
         f.set("flat", r.flat);
         f.set("free-rank", r.rank);
         f.set("retraction", r.retraction.has_value());
         f.set("bijective", r.bijective);
         return f;
       }},
      {"gallery",
       [](const Ctx& c) {
         const std::string& id = c.arg(0);
         auto opt = c.options(1);
         auto take = [&](const std::string& k, long dflt, long lo, long hi) {
           auto it = opt.find(k);
           long v = it == opt.end() ? dflt : it->second;
           if (v < lo || v > hi) c.usage(k + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
           opt.erase(k);
           return v;
         };
         const std::size_t l = static_cast<std::size_t>(take("L", static_cast<long>(c.s.config.ext_range), 0, 12));
         Facts f;
         if (id == "2.8") {
           f = gallery_2_8(l);
         } else if (id == "2.9") {
           long p = take("p", 2, 2, 1000);
           long n = take("N", 2, 1, 64);
           f = gallery_2_9(p, static_cast<int>(n), l);
         } else if (id == "2.10") {
           f = gallery_2_10();
         } else if (id == "2.11") {
           f = gallery_2_11(static_cast<int>(take("n", 2, 1, 64)), l);
         } else {
           c.usage("unknown gallery example '" + id + "' (known: 2.8, 2.9, 2.10, 2.11)");
         }
         if (!opt.empty()) c.usage("unknown option '" + opt.begin()->first + "'");
         return f;
       }},
      {"pid_classify",
       [](const Ctx& c) {
         c.max_args(1);
         Facts f;
         put_pid(f, "module", c.pid(0));
         return f;
       }},
      {"pid_ascent",
       [](const Ctx& c) {
         c.max_args(1);
         auto r = completion_ascent(c.pid(0));
         c.asserted->push_back("ext-vanishing");
         return r.facts();
       }},
      {"thm113",
       [](const Ctx& c) {
         c.max_args(1);
         auto t = thm113_decision(c.pid(0));
         auto a = completion_ascent(c.pid(0));
         std::string primes;
         for (const auto& p : t.min_primes) primes += (primes.empty() ? "" : " ") + p;
         Facts f;
         f.set("decision", t.decision);
         f.set("min-primes", primes);
         f.set("condition-holds", bits(t.condition_holds));
         assert_that(t.decision == a.compatible, "thm113 decision disagrees with completion_ascent");
         return f;
       }},
      {"pid_ext",
       [](const Ctx& c) {
         c.max_args(3);
         auto r = ext_pid(c.pid(0), c.pid(1), static_cast<int>(c.integer(2, 0, 64)));
         Facts f;
         put_pid(f, "ext", r.module);
         if (!r.note.empty()) f.set("note", r.note);
         return f;
       }},
      {"pid_extend",
       [](const Ctx& c) {
         c.max_args(1);
         const PIDModule& n = c.pid(0);
         PIDModule s = n.side == Side::OverS ? n : base_change_pid(n);
         PIDModule m = extend_pid(s);
         Facts f;
         put_pid(f, "descended", m);
         f.set("round-trip", base_change_pid(m) == s);
         return f;
       }},
      {"pid_prop32",
       [](const Ctx& c) {
         c.max_args(3);
         auto r = prop32_case1_pid(c.pid(0), c.pid(1), static_cast<int>(c.integer(2, 0, 1000)));
         Facts f;
         f.set("ext1-length", r.ext1_length);
         put_pid(f, "middle", r.middle_r);
         f.set("extended", r.extended);
         return f;
       }},
  };
  return h;
}

void Parser::command() {
  const auto& t = l_->tokens;
  if (t.size() < 2) fail(t[0], "expected 'cmd OPERATION ...'");
  Command c;
  c.line = l_->number;
  c.op = t[1].text;
  if (!handlers().count(c.op)) fail(t[1], "unknown command '" + c.op + "'");
  for (std::size_t i = 2; i < t.size(); ++i) c.args.push_back(t[i].text);
  c.text = trim(l_->text.substr(t[1].col - 1));
  s_.commands.push_back(std::move(c));
}

CommandResult execute(const Session& s, const Command& cmd, std::uint64_t seed, const CancelToken& tok) {
  CommandResult out;
  out.line = cmd.line;
  out.text = cmd.text;
  auto t0 = std::chrono::steady_clock::now();
  try {
    tok.check();
    Ctx ctx{s, cmd, seed, tok, &out.asserted};
    out.facts = handlers().at(cmd.op)(ctx);
  } catch (const ResourceExceeded& e) {
    out.status = CommandStatus::ResourceExceeded;
    out.message = e.what();
  } catch (const std::invalid_argument& e) {
    out.status = CommandStatus::Error;
    out.message = e.what();
  } catch (const InvariantError& e) {
    out.status = CommandStatus::AssertionFailed;
    out.message = e.what();
  } catch (const std::logic_error& e) {
    out.status = CommandStatus::AssertionFailed;
    out.message = e.what();
  } catch (const std::exception& e) {
    out.status = CommandStatus::Error;
    out.message = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

Session parse_session(const std::string& text) {
  Session s;
  Parser p(s);
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string raw = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    Line l{number, tokenize(raw, number), raw};
    if (l.tokens.empty()) continue;
    p.line(l);
  }
  return s;
}

RunOptions default_run_options() {
  RunOptions o;
  if (const char* env = std::getenv("HOMASCEND_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) o.threads = static_cast<std::size_t>(std::min<long>(v, 256));
  }
  return o;
}

Report run(const Session& s, const RunOptions& opts) {
  Report r;
  r.seed = opts.seed.value_or(s.config.seed);
  r.declarations = {{"fields", s.fields.size()},   {"algebras", s.algebras.size()},
                    {"maps", s.maps.size()},       {"modules", s.modules.size()},
                    {"pid-modules", s.pid_modules.size()}, {"complexes", s.complexes.size()}};
  CancelToken tok = opts.timeout ? CancelToken::with_deadline(*opts.timeout) : CancelToken();
  const std::size_t n = s.commands.size();
  std::vector<CommandResult> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) results[i] = execute(s, s.commands[i], r.seed, tok);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(opts.threads, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  bool failed = false;
  for (auto& c : results) {
    if (failed) {
      c.status = CommandStatus::Skipped;
      c.facts = Facts();
      c.asserted.clear();
      c.message.clear();
      c.seconds = 0;
    } else if (c.status != CommandStatus::Ok) {
      failed = true;
      if (c.status == CommandStatus::ResourceExceeded) r.complete = false;
    }
  }
  if (failed) r.complete = false;
  r.commands = std::move(results);
  return r;
}

}  // namespace homascend
