#include "chainlets/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "chainlets/norms.hpp"

namespace chainlets {

namespace {

Scalar parse_scalar_token(const std::string& tok, bool exact) {
  try {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
      Rational q(tok);
      return exact ? Scalar(q) : Scalar::fp(q.convert_to<double>());
    }
    if (tok.find('.') != std::string::npos || tok.find('e') != std::string::npos ||
        tok.find('E') != std::string::npos)
      return Scalar::fp(std::stod(tok));
    Rational q(tok);
    return exact ? Scalar(q) : Scalar::fp(q.convert_to<double>());
  } catch (const std::exception&) {
    throw ParseError("bad number: '" + tok + "'");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string chain_to_text(const Chain& p) {
  std::ostringstream os;
  bool exact = true;
  for (const auto& [at, payload] : p.support()) {
    for (const auto& x : at)
      if (!x.exact()) exact = false;
    for (const auto& [key, c] : payload.terms())
      if (!c.exact()) exact = false;
  }
  os << "chainlet-chain v1\n";
  os << "n " << p.n() << "\n";
  os << "mode " << (exact ? "rational" : "float") << "\n";
  for (const auto& pole : p.poles()) {
    for (const auto& [key, c] : pole.payload.terms()) {
      os << "pole ";
      for (const auto& x : pole.at) os << x.str() << ' ';
      os << "; " << key.first.order() << " ; ";
      if (key.first.factors().empty())
        os << "- ";
      else
        for (int f : key.first.factors()) os << f << ' ';
      os << "; ";
      if (key.second.indices().empty())
        os << "- ";
      else
        for (int i : key.second.indices()) os << i << ' ';
      os << "; " << c.str() << "\n";
    }
  }
  return os.str();
}

Chain chain_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || split_ws(line) != std::vector<std::string>{"chainlet-chain", "v1"})
    throw ParseError("chain file: missing 'chainlet-chain v1' header");
  int n = -1;
  bool exact = true;
  bool have_mode = false;
  Chain out(0);
  bool have_n = false;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "n") {
      if (toks.size() != 2) throw ParseError("chain file: bad 'n' line");
      n = std::stoi(toks[1]);
      if (n < 0) throw ParseError("chain file: negative dimension");
      out = Chain(n);
      have_n = true;
      continue;
    }
    if (toks[0] == "mode") {
      if (toks.size() != 2 || (toks[1] != "rational" && toks[1] != "float"))
        throw ParseError("chain file: bad 'mode' line");
      exact = toks[1] == "rational";
      have_mode = true;
      continue;
    }
    if (toks[0] == "pole") {
      if (!have_n || !have_mode)
        throw ParseError("chain file: 'pole' before 'n'/'mode'");
      auto fields = split_on(line.substr(5), ';');
      if (fields.size() != 5)
        throw ParseError("chain file line " + std::to_string(lineno) +
                         ": expected 5 ';'-separated fields");
      auto coords = split_ws(fields[0]);
      if (static_cast<int>(coords.size()) != n)
        throw ParseError("chain file line " + std::to_string(lineno) +
                         ": expected " + std::to_string(n) + " coordinates");
      Point at;
      for (const auto& c : coords) at.push_back(parse_scalar_token(c, exact));
      int order = std::stoi(split_ws(fields[1]).at(0));
      std::vector<int> sym;
      for (const auto& t : split_ws(fields[2])) {
        if (t == "-") break;
        sym.push_back(std::stoi(t));
      }
      if (static_cast<int>(sym.size()) != order)
        throw ParseError("chain file line " + std::to_string(lineno) +
                         ": order does not match symmetric factor");
      std::sort(sym.begin(), sym.end());
      std::vector<int> lam;
      for (const auto& t : split_ws(fields[3])) {
        if (t == "-") break;
        lam.push_back(std::stoi(t));
      }
      auto coeff_toks = split_ws(fields[4]);
      if (coeff_toks.size() != 1)
        throw ParseError("chain file line " + std::to_string(lineno) +
                         ": expected one coefficient");
      Scalar coeff = parse_scalar_token(coeff_toks[0], exact);
      XElement payload =
          XElement::term(n, SymMonomial(sym), MultiIndex(lam), coeff);
      out.add_pole(at, payload);
      continue;
    }
    throw ParseError("chain file line " + std::to_string(lineno) +
                     ": unknown record '" + toks[0] + "'");
  }
  if (!have_n) throw ParseError("chain file: missing 'n'");
  return out;
}

void write_chain_file(const std::string& path, const Chain& p) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << chain_to_text(p);
}

Chain read_chain_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return chain_from_text(os.str());
}

// ---------------------------------------------------------------------------
// Form literal parser.
// ---------------------------------------------------------------------------
namespace {

struct FormParser {
  std::string src;
  size_t pos = 0;
  int n;

  explicit FormParser(std::string s, int dim) : src(std::move(s)), n(dim) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("form literal at position " + std::to_string(pos) + ": " +
                     msg);
  }

  // A parsed multiplicative item: coefficient and wedge of dx indices.
  struct Item {
    CoeffFn coeff = CoeffFn::constant(Scalar(1));
    std::vector<int> dx;  // in wedge order, may repeat (then the term is 0)
  };

  Form parse() {
    Form* accum = nullptr;
    Form result(n, 0);
    bool have = false;
    int sign = 1;
    skip_ws();
    if (peek() == '-') {
      eat('-');
      sign = -1;
    }
    while (true) {
      Item item = parse_term();
      // Normalize the wedge of dx indices.
      int wedge_sign = 1;
      std::vector<int> idx = item.dx;
      bool zero = false;
      for (size_t i = 0; i < idx.size() && !zero; ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
          if (idx[i] == idx[j]) zero = true;
          if (idx[i] > idx[j]) {
            std::swap(idx[i], idx[j]);
            wedge_sign = -wedge_sign;
          }
        }
      if (!zero) {
        CoeffFn c = CoeffFn::constant(Scalar(sign * wedge_sign)) * item.coeff;
        MultiIndex mi(idx);
        if (!have) {
          result = Form(n, mi.grade());
          have = true;
        }
        if (mi.grade() != result.grade())
          fail("mixed form grades in one literal");
        result.add_term(mi, c);
        (void)accum;
      }
      skip_ws();
      if (pos >= src.size()) break;
      if (eat('+')) {
        sign = 1;
      } else if (eat('-')) {
        sign = -1;
      } else {
        fail("expected '+' or '-'");
      }
    }
    if (!have) fail("empty literal");
    return result;
  }

  Item parse_term() {
    Item item;
    while (true) {
      parse_factor(item);
      skip_ws();
      if (eat('*')) continue;
      break;
    }
    return item;
  }

  void parse_factor(Item& item) {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      CoeffFn inner = parse_coeff_expr();
      if (!eat(')')) fail("expected ')'");
      item.coeff = item.coeff * maybe_power(inner);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      item.coeff = item.coeff * maybe_power(parse_number());
      return;
    }
    if (src.compare(pos, 3, "sin") == 0 || src.compare(pos, 3, "cos") == 0) {
      bool is_sin = src[pos] == 's';
      pos += 3;
      if (!eat('(')) fail("expected '(' after sin/cos");
      CoeffFn arg = parse_coeff_expr();
      if (!eat(')')) fail("expected ')'");
      auto aff = arg.as_affine(n);
      if (!aff) fail("sin/cos argument must be affine in the coordinates");
      item.coeff =
          item.coeff * (is_sin ? CoeffFn::sin(*aff) : CoeffFn::cos(*aff));
      return;
    }
    if (src.compare(pos, 2, "dx") == 0) {
      // dx atom, optionally wedged with further dx atoms via '^'.
      while (true) {
        if (src.compare(pos, 2, "dx") != 0) fail("expected dx after '^'");
        pos += 2;
        item.dx.push_back(parse_index());
        size_t save = pos;
        if (!eat('^')) break;
        skip_ws();
        if (src.compare(pos, 2, "dx") != 0) {
          pos = save;
          break;
        }
      }
      return;
    }
    if (c == 'x') {
      item.coeff = item.coeff * maybe_power(parse_coord());
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // Parses an exponent suffix '^<int>' if present.
  CoeffFn maybe_power(const CoeffFn& base) {
    size_t save = pos;
    if (eat('^')) {
      skip_ws();
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
          ++pos;
        int e = std::stoi(src.substr(start, pos - start));
        return CoeffFn::pow(base, e);
      }
      pos = save;
    }
    return base;
  }

  // Full +/-/*/^ expression used inside parentheses and trig arguments.
  CoeffFn parse_coeff_expr() {
    CoeffFn acc = parse_coeff_term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        acc = acc + parse_coeff_term();
      } else if (eat('-')) {
        acc = acc - parse_coeff_term();
      } else {
        return acc;
      }
    }
  }

  CoeffFn parse_coeff_term() {
    CoeffFn acc = parse_coeff_atom();
    while (true) {
      skip_ws();
      if (eat('*')) {
        acc = acc * parse_coeff_atom();
      } else {
        return acc;
      }
    }
  }

  CoeffFn parse_coeff_atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of expression");
    char c = src[pos];
    if (c == '-') {
      ++pos;
      return CoeffFn::constant(Scalar(-1)) * parse_coeff_atom();
    }
    if (c == '(') {
      ++pos;
      CoeffFn inner = parse_coeff_expr();
      if (!eat(')')) fail("expected ')'");
      return maybe_power(inner);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return maybe_power(parse_number());
    if (src.compare(pos, 3, "sin") == 0 || src.compare(pos, 3, "cos") == 0) {
      bool is_sin = src[pos] == 's';
      pos += 3;
      if (!eat('(')) fail("expected '(' after sin/cos");
      CoeffFn arg = parse_coeff_expr();
      if (!eat(')')) fail("expected ')'");
      auto aff = arg.as_affine(n);
      if (!aff) fail("sin/cos argument must be affine in the coordinates");
      return is_sin ? CoeffFn::sin(*aff) : CoeffFn::cos(*aff);
    }
    if (c == 'x') return maybe_power(parse_coord());
    fail(std::string("unexpected character '") + c + "' in expression");
  }

  CoeffFn parse_coord() {
    ++pos;  // 'x'
    int i = parse_index();
    return CoeffFn::coord(i);
  }

  int parse_index() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (start == pos) fail("expected coordinate index");
    int i = std::stoi(src.substr(start, pos - start));
    if (i < 1 || i > n) fail("coordinate index out of range 1..n");
    return i;
  }

  CoeffFn parse_number() {
    size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      ++pos;
    std::string tok = src.substr(start, pos - start);
    if (pos < src.size() && src[pos] == '/' && pos + 1 < src.size() &&
        std::isdigit(static_cast<unsigned char>(src[pos + 1]))) {
      ++pos;
      size_t dstart = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
        ++pos;
      tok += "/" + src.substr(dstart, pos - dstart);
    }
    bool exact = arithmetic_mode() == ArithmeticMode::kRational &&
                 tok.find('.') == std::string::npos;
    return CoeffFn::constant(parse_scalar_token(tok, exact));
  }
};

}  // namespace

Form parse_form(const std::string& text, int n) {
  FormParser p(text, n);
  Form w = p.parse();
  return w;
}

SmoothMap parse_map(const std::string& text, int n) {
  auto parts = split_on(text, ',');
  std::vector<CoeffFn> comps;
  for (const auto& part : parts) {
    FormParser p(part, n);
    CoeffFn f = p.parse_coeff_expr();
    p.skip_ws();
    if (p.pos != part.size())
      throw ParseError("map component: trailing input '" +
                       part.substr(p.pos) + "'");
    comps.push_back(f);
  }
  return SmoothMap(n, std::move(comps));
}

// ---------------------------------------------------------------------------
// Mesh pair files.
// ---------------------------------------------------------------------------
namespace {

void write_complex(std::ostringstream& os, const SimplicialComplex& c,
                   const std::string& label) {
  os << label << " k " << c.k << " vertices " << c.vertices.size()
     << " simplices " << c.simplices.size() << "\n";
  for (const auto& v : c.vertices) {
    os << "v";
    for (const auto& x : v) os << ' ' << x.str();
    os << "\n";
  }
  for (const auto& s : c.simplices) {
    os << "s " << s.coeff.str();
    for (size_t v : s.vertices) os << ' ' << v;
    os << "\n";
  }
}

SimplicialComplex read_complex(std::istream& is, int n,
                               const std::string& label) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("mesh file: missing " + label);
  auto toks = split_ws(line);
  if (toks.size() != 7 || toks[0] != label || toks[1] != "k" ||
      toks[3] != "vertices" || toks[5] != "simplices")
    throw ParseError("mesh file: bad '" + label + "' header");
  SimplicialComplex c;
  c.n = n;
  c.k = std::stoi(toks[2]);
  size_t nv = std::stoul(toks[4]);
  size_t ns = std::stoul(toks[6]);
  for (size_t i = 0; i < nv; ++i) {
    if (!std::getline(is, line)) throw ParseError("mesh file: truncated vertices");
    auto vt = split_ws(line);
    if (vt.size() != static_cast<size_t>(n) + 1 || vt[0] != "v")
      throw ParseError("mesh file: bad vertex line");
    Point p;
    for (int d = 1; d <= n; ++d)
      p.push_back(parse_scalar_token(vt[static_cast<size_t>(d)], false));
    c.vertices.push_back(p);
  }
  for (size_t i = 0; i < ns; ++i) {
    if (!std::getline(is, line)) throw ParseError("mesh file: truncated simplices");
    auto st = split_ws(line);
    if (st.size() != static_cast<size_t>(c.k) + 3 || st[0] != "s")
      throw ParseError("mesh file: bad simplex line");
    Simplex s;
    s.coeff = parse_scalar_token(st[1], false);
    for (size_t t = 2; t < st.size(); ++t)
      s.vertices.push_back(std::stoul(st[t]));
    c.simplices.push_back(s);
  }
  return c;
}

}  // namespace

std::string meshpair_to_text(const MeshPair& mp) {
  std::ostringstream os;
  os << "chainlet-meshpair v1\n";
  os << "n " << mp.primal.n << "\n";
  write_complex(os, mp.primal, "primal");
  write_complex(os, mp.dual, "dual");
  os << "bijection " << mp.bijection.size() << "\n";
  for (const auto& [a, b] : mp.bijection) os << "b " << a << ' ' << b << "\n";
  return os.str();
}

MeshPair meshpair_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) ||
      split_ws(line) != std::vector<std::string>{"chainlet-meshpair", "v1"})
    throw ParseError("mesh file: missing 'chainlet-meshpair v1' header");
  if (!std::getline(is, line)) throw ParseError("mesh file: missing 'n'");
  auto toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != "n")
    throw ParseError("mesh file: bad 'n' line");
  int n = std::stoi(toks[1]);
  MeshPair mp;
  mp.primal = read_complex(is, n, "primal");
  mp.dual = read_complex(is, n, "dual");
  if (!std::getline(is, line)) throw ParseError("mesh file: missing bijection");
  toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != "bijection")
    throw ParseError("mesh file: bad bijection header");
  size_t count = std::stoul(toks[1]);
  for (size_t i = 0; i < count; ++i) {
    if (!std::getline(is, line)) throw ParseError("mesh file: truncated bijection");
    auto bt = split_ws(line);
    if (bt.size() != 3 || bt[0] != "b")
      throw ParseError("mesh file: bad bijection line");
    mp.bijection.push_back({std::stoul(bt[1]), std::stoul(bt[2])});
  }
  mp.validate();
  return mp;
}

void write_meshpair_file(const std::string& path, const MeshPair& mp) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << meshpair_to_text(mp);
}

MeshPair read_meshpair_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return meshpair_from_text(os.str());
}

std::string bracket_report(const NormBracket& b) {
  std::ostringstream os;
  os << "natural norm bracket, r = " << b.r << "\n";
  os << "lower " << b.lower << "\n";
  os << "upper " << b.upper << "\n";
  os << "lower witness form: " << b.lower_witness.str() << "\n";
  os << "upper witness decomposition (" << b.upper_witness.parts.size()
     << " parts):\n";
  for (const auto& part : b.upper_witness.parts) {
    os << "  " << part.coeff.str() << " * Delta^" << part.order() << "[";
    for (size_t i = 0; i < part.dirs.size(); ++i) {
      if (i) os << " | ";
      for (size_t j = 0; j < part.dirs[i].size(); ++j) {
        if (j) os << ',';
        os << part.dirs[i][j].str();
      }
    }
    os << "](";
    for (size_t j = 0; j < part.base.size(); ++j) {
      if (j) os << ',';
      os << part.base[j].str();
    }
    os << "; " << part.payload.str() << ") cost " << part.cost() << "\n";
  }
  return os.str();
}

}  // namespace chainlets
