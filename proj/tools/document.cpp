#include "document.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace compcat::text {

DocumentError::DocumentError(std::size_t line, const std::string& message, const std::string& file)
    : StructuralError((file.empty() ? "line " : file + ":") + std::to_string(line) + ": " + message),
      line_(line),
      message_(message) {}

namespace {

using Tokens = std::vector<std::string>;

Tokens split(std::string_view s) {
  Tokens out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string join(const Tokens& t, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < t.size(); ++i) {
    if (i > from) out += ' ';
    out += t[i];
  }
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty() || s == "->" || s == "=" || s == ":" || s == "end") return false;
  return s.find_first_of(":#") == std::string_view::npos;
}

void require_name(std::string_view s, std::size_t line) {
  if (!valid_name(s)) throw DocumentError(line, "invalid name '" + std::string(s) + "'");
}

struct RawLine {
  Tokens tokens;
  std::size_t line;
};

struct RawBlock {
  Tokens header;
  std::size_t line = 0;
  std::map<std::string, RawLine> keys;
  std::map<std::string, std::vector<RawLine>> sections;
  std::vector<RawLine> body;  // pipelines
};

struct Grammar {
  std::set<std::string> keys;
  std::set<std::string> sections;
};

const std::map<std::string, Grammar>& grammars() {
  static const std::map<std::string, Grammar> g{
      {"category", {{}, {"objects", "morphisms", "identities", "compose"}}},
      {"functor", {{}, {"objects", "morphisms"}}},
      {"nat_trans", {{}, {"components"}}},
      {"adjunction", {{"left", "right"}, {"unit", "counit"}}},
      {"lax", {{"from", "to", "total", "base"}, {"phi"}}},
      {"two_cell", {{"from", "to"}, {"base", "total"}}},
      {"lift", {{"lower", "upper", "base", "total"}, {"phi", "psi"}}},
      {"pipeline", {{}, {}}},
  };
  return g;
}

std::vector<int> parse_ints(std::string_view s, std::size_t line) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t i = 0;
  while (i <= s.size()) {
    const std::size_t j = std::min(s.find(',', i), s.size());
    const std::string_view item = s.substr(i, j - i);
    int v = 0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size() || v < 0)
      throw DocumentError(line, "expected a non-negative integer, got '" + std::string(item) + "'");
    out.push_back(v);
    i = j + 1;
  }
  return out;
}

std::string ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

// `a : b` or `a -> b`.
MapEntry map_entry(const RawLine& l, std::string_view arrow) {
  if (l.tokens.size() != 3 || l.tokens[1] != arrow)
    throw DocumentError(l.line, "expected 'x " + std::string(arrow) + " y', got '" + join(l.tokens) + "'");
  require_name(l.tokens[0], l.line);
  require_name(l.tokens[2], l.line);
  return MapEntry{l.tokens[0], l.tokens[2], l.line};
}

std::vector<MapEntry> map_section(const RawBlock& b, const std::string& section, std::string_view arrow) {
  std::vector<MapEntry> out;
  const auto it = b.sections.find(section);
  if (it == b.sections.end()) return out;
  std::set<std::string> seen;
  for (const RawLine& l : it->second) {
    MapEntry e = map_entry(l, arrow);
    if (!seen.insert(e.from).second)
      throw DocumentError(l.line, "duplicate entry for '" + e.from + "' in " + section + ":");
    out.push_back(std::move(e));
  }
  return out;
}

std::string key(const RawBlock& b, const std::string& k) {
  const auto it = b.keys.find(k);
  if (it == b.keys.end()) throw DocumentError(b.line, b.header[0] + " " + b.header[1] + ": missing '" + k + "'");
  return it->second.tokens[1];
}

void header_arity(const RawBlock& b, std::size_t n, const char* usage) {
  if (b.header.size() != n) throw DocumentError(b.line, std::string("expected '") + usage + "'");
  for (std::size_t i = 1; i < n; ++i) require_name(b.header[i], b.line);
}

Block convert(const RawBlock& b) {
  const std::string& kind = b.header[0];
  if (kind == "category") {
    header_arity(b, 2, "category NAME");
    CategoryDoc c;
    c.name = b.header[1];
    c.line = b.line;
    std::set<std::string> objects, morphisms;
    if (const auto it = b.sections.find("objects"); it != b.sections.end()) {
      for (const RawLine& l : it->second)
        for (const std::string& t : l.tokens) {
          require_name(t, l.line);
          if (!objects.insert(t).second) throw DocumentError(l.line, "duplicate object '" + t + "'");
          c.objects.push_back({t, l.line});
        }
    }
    if (const auto it = b.sections.find("morphisms"); it != b.sections.end()) {
      for (const RawLine& l : it->second) {
        if (l.tokens.size() != 3) throw DocumentError(l.line, "expected 'name dom cod'");
        for (const auto& t : l.tokens) require_name(t, l.line);
        if (!morphisms.insert(l.tokens[0]).second)
          throw DocumentError(l.line, "duplicate morphism '" + l.tokens[0] + "'");
        c.morphisms.push_back({l.tokens[0], l.tokens[1], l.tokens[2], l.line});
      }
    }
    c.identities = map_section(b, "identities", ":");
    if (const auto it = b.sections.find("compose"); it != b.sections.end()) {
      for (const RawLine& l : it->second) {
        if (l.tokens.size() != 4 || l.tokens[2] != "=") throw DocumentError(l.line, "expected 'g f = h'");
        for (std::size_t i : {0u, 1u, 3u}) require_name(l.tokens[i], l.line);
        c.compose.push_back({l.tokens[0], l.tokens[1], l.tokens[3], l.line});
      }
    }
    return c;
  }
  if (kind == "functor") {
    header_arity(b, 4, "functor NAME SOURCE TARGET");
    return FunctorDoc{b.header[1], b.header[2], b.header[3], b.line, map_section(b, "objects", "->"),
                      map_section(b, "morphisms", "->")};
  }
  if (kind == "nat_trans") {
    header_arity(b, 4, "nat_trans NAME SOURCE TARGET");
    return NatTransDoc{b.header[1], b.header[2], b.header[3], b.line, map_section(b, "components", ":")};
  }
  if (kind == "adjunction") {
    header_arity(b, 2, "adjunction NAME");
    return AdjunctionDoc{b.header[1], b.line, key(b, "left"), key(b, "right"), map_section(b, "unit", ":"),
                         map_section(b, "counit", ":")};
  }
  if (kind == "lax") {
    header_arity(b, 2, "lax NAME");
    return LaxDoc{b.header[1], b.line, key(b, "from"), key(b, "to"), key(b, "total"), key(b, "base"),
                  map_section(b, "phi", ":")};
  }
  if (kind == "two_cell") {
    header_arity(b, 2, "two_cell NAME");
    return TwoCellDoc{b.header[1], b.line, key(b, "from"), key(b, "to"), map_section(b, "base", ":"),
                      map_section(b, "total", ":")};
  }
  if (kind == "lift") {
    header_arity(b, 2, "lift NAME");
    return LiftDoc{b.header[1], b.line, key(b, "lower"), key(b, "upper"), key(b, "base"), key(b, "total"),
                   map_section(b, "phi", ":"), map_section(b, "psi", ":")};
  }
  header_arity(b, 2, "pipeline NAME");
  PipelineDoc p{b.header[1], b.line, {}};
  for (const RawLine& l : b.body) p.commands.emplace_back(join(l.tokens), l.line);
  return p;
}

// Morphisms in index order, implicit identities last.
struct Layout {
  std::vector<CategoryDoc::Morphism> morphisms;
  std::vector<Mor> identity;
};

Layout layout(const CategoryDoc& c) {
  Layout out{c.morphisms, {}};
  std::map<std::string, Obj> obj;
  for (Obj i = 0; i < c.objects.size(); ++i) obj.emplace(c.objects[i].name, i);
  std::map<std::string, Mor> mor;
  for (Mor i = 0; i < c.morphisms.size(); ++i) {
    const auto& m = c.morphisms[i];
    for (const auto* end : {&m.dom, &m.cod})
      if (!obj.count(*end)) throw DocumentError(m.line, "unknown object '" + *end + "' in " + c.name);
    mor.emplace(m.name, i);
  }
  out.identity.assign(c.objects.size(), no_mor);
  for (const MapEntry& e : c.identities) {
    const auto o = obj.find(e.from);
    if (o == obj.end()) throw DocumentError(e.line, "unknown object '" + e.from + "' in " + c.name);
    const auto m = mor.find(e.to);
    if (m == mor.end()) throw DocumentError(e.line, "unknown morphism '" + e.to + "' in " + c.name);
    const auto& decl = c.morphisms[m->second];
    if (decl.dom != e.from || decl.cod != e.from)
      throw DocumentError(e.line, "identity '" + e.to + "' is not an endomorphism of '" + e.from + "'");
    out.identity[o->second] = m->second;
  }
  for (Obj i = 0; i < c.objects.size(); ++i) {
    if (out.identity[i] != no_mor) continue;
    const std::string& x = c.objects[i].name;
    const std::string name = "id_" + x;
    if (const auto m = mor.find(name); m != mor.end()) {
      const auto& decl = c.morphisms[m->second];
      if (decl.dom != x || decl.cod != x)
        throw DocumentError(decl.line, "'" + name + "' must be an endomorphism of '" + x + "'");
      out.identity[i] = m->second;
      continue;
    }
    out.identity[i] = static_cast<Mor>(out.morphisms.size());
    out.morphisms.push_back({name, x, x, c.objects[i].line});
    mor.emplace(name, out.identity[i]);
  }
  return out;
}

CategoryNames names(const CategoryDoc& c) {
  CategoryNames n;
  for (Obj i = 0; i < c.objects.size(); ++i) n.objects.emplace(c.objects[i].name, i);
  const Layout l = layout(c);
  for (Mor i = 0; i < l.morphisms.size(); ++i) {
    n.morphisms.emplace(l.morphisms[i].name, i);
    n.dom.push_back(n.objects.at(l.morphisms[i].dom));
    n.cod.push_back(n.objects.at(l.morphisms[i].cod));
  }
  n.identity = l.identity;
  return n;
}

class Checker {
 public:
  explicit Checker(const Document& d) : doc_(d) {}

  void run() {
    for (const Block& b : doc_.blocks) std::visit([this](const auto& x) { check(x); }, b);
  }

 private:
  const CategoryDoc& category(const std::string& name, std::size_t line) const {
    const auto* c = doc_.find<CategoryDoc>(name);
    if (!c) throw DocumentError(line, "unknown category '" + name + "'");
    return *c;
  }
  const FunctorDoc& functor(const std::string& name, std::size_t line) const {
    const auto* f = doc_.find<FunctorDoc>(name);
    if (!f) throw DocumentError(line, "unknown functor '" + name + "'");
    return *f;
  }
  const LaxDoc& lax(const std::string& name, std::size_t line) const {
    const auto* l = doc_.find<LaxDoc>(name);
    if (!l) throw DocumentError(line, "unknown lax morphism '" + name + "'");
    return *l;
  }
  const AdjunctionDoc& adjunction(const std::string& name, std::size_t line) const {
    const auto* a = doc_.find<AdjunctionDoc>(name);
    if (!a) throw DocumentError(line, "unknown adjunction '" + name + "'");
    return *a;
  }

  // Components indexed by objects of `over`, naming morphisms of `in`.
  void components(const std::vector<MapEntry>& entries, const CategoryDoc& over, const CategoryDoc& in,
                  std::size_t line, const std::string& what) const {
    const CategoryNames o = names(over);
    const CategoryNames m = names(in);
    for (const MapEntry& e : entries) {
      if (!o.objects.count(e.from)) throw DocumentError(e.line, "unknown object '" + e.from + "' in " + over.name);
      if (!m.morphisms.count(e.to)) throw DocumentError(e.line, "unknown morphism '" + e.to + "' in " + in.name);
    }
    if (entries.size() != over.objects.size())
      throw DocumentError(line, what + ": every object of " + over.name + " needs a component");
  }

  void check(const CategoryDoc& c) const {
    const CategoryNames n = names(c);
    std::set<std::pair<Mor, Mor>> seen;
    for (const auto& e : c.compose) {
      Mor idx[3];
      const std::string* parts[3] = {&e.g, &e.f, &e.h};
      for (int i = 0; i < 3; ++i) {
        const auto it = n.morphisms.find(*parts[i]);
        if (it == n.morphisms.end()) throw DocumentError(e.line, "unknown morphism '" + *parts[i] + "' in " + c.name);
        idx[i] = it->second;
      }
      if (n.dom[idx[0]] != n.cod[idx[1]]) throw DocumentError(e.line, e.g + " and " + e.f + " do not compose");
      if (n.dom[idx[2]] != n.dom[idx[1]] || n.cod[idx[2]] != n.cod[idx[0]])
        throw DocumentError(e.line, e.h + " has the wrong type for " + e.g + " " + e.f);
      if (!seen.emplace(idx[0], idx[1]).second)
        throw DocumentError(e.line, "duplicate composite " + e.g + " " + e.f);
    }
  }

  void check(const FunctorDoc& f) const {
    const CategoryDoc& s = category(f.source, f.line);
    const CategoryDoc& t = category(f.target, f.line);
    const CategoryNames sn = names(s);
    const CategoryNames tn = names(t);
    for (const MapEntry& e : f.objects) {
      if (!sn.objects.count(e.from)) throw DocumentError(e.line, "unknown object '" + e.from + "' in " + s.name);
      if (!tn.objects.count(e.to)) throw DocumentError(e.line, "unknown object '" + e.to + "' in " + t.name);
    }
    if (f.objects.size() != s.objects.size())
      throw DocumentError(f.line, "functor " + f.name + ": every object of " + s.name + " needs an image");
    std::set<Mor> mapped;
    for (const MapEntry& e : f.morphisms) {
      const auto it = sn.morphisms.find(e.from);
      if (it == sn.morphisms.end()) throw DocumentError(e.line, "unknown morphism '" + e.from + "' in " + s.name);
      if (!tn.morphisms.count(e.to)) throw DocumentError(e.line, "unknown morphism '" + e.to + "' in " + t.name);
      mapped.insert(it->second);
    }
    for (Mor m = 0; m < sn.dom.size(); ++m)
      if (!mapped.count(m) && sn.identity[sn.dom[m]] != m)
        throw DocumentError(f.line, "functor " + f.name + ": no image for a morphism of " + s.name);
  }

  void check(const NatTransDoc& a) const {
    const FunctorDoc& f = functor(a.source, a.line);
    const FunctorDoc& g = functor(a.target, a.line);
    if (f.source != g.source || f.target != g.target)
      throw DocumentError(a.line, "nat_trans " + a.name + ": functors are not parallel");
    components(a.components, category(f.source, a.line), category(f.target, a.line), a.line,
               "nat_trans " + a.name);
  }

  void check(const AdjunctionDoc& a) const {
    const FunctorDoc& l = functor(a.left, a.line);
    const FunctorDoc& r = functor(a.right, a.line);
    if (l.source != r.target || l.target != r.source)
      throw DocumentError(a.line, "adjunction " + a.name + ": left and right are not opposed");
    const CategoryDoc& lower = category(l.source, a.line);
    const CategoryDoc& upper = category(l.target, a.line);
    components(a.unit, lower, lower, a.line, "adjunction " + a.name + " unit");
    components(a.counit, upper, upper, a.line, "adjunction " + a.name + " counit");
  }

  void check(const LaxDoc& m) const {
    const FunctorDoc& p1 = functor(m.from, m.line);
    const FunctorDoc& p2 = functor(m.to, m.line);
    const FunctorDoc& fe = functor(m.total, m.line);
    const FunctorDoc& fb = functor(m.base, m.line);
    if (fe.source != p1.source || fe.target != p2.source)
      throw DocumentError(m.line, "lax " + m.name + ": total functor has the wrong endpoints");
    if (fb.source != p1.target || fb.target != p2.target)
      throw DocumentError(m.line, "lax " + m.name + ": base functor has the wrong endpoints");
    components(m.phi, category(p1.source, m.line), category(p2.target, m.line), m.line, "lax " + m.name);
  }

  void check(const TwoCellDoc& t) const {
    const LaxDoc& m1 = lax(t.from, t.line);
    const LaxDoc& m2 = lax(t.to, t.line);
    if (m1.from != m2.from || m1.to != m2.to)
      throw DocumentError(t.line, "two_cell " + t.name + ": lax morphisms are not parallel");
    const FunctorDoc& p1 = functor(m1.from, t.line);
    const FunctorDoc& p2 = functor(m1.to, t.line);
    components(t.base, category(p1.target, t.line), category(p2.target, t.line), t.line,
               "two_cell " + t.name + " base");
    components(t.total, category(p1.source, t.line), category(p2.source, t.line), t.line,
               "two_cell " + t.name + " total");
  }

  void check(const LiftDoc& l) const {
    const FunctorDoc& p1 = functor(l.lower, l.line);
    const FunctorDoc& p2 = functor(l.upper, l.line);
    const AdjunctionDoc& base = adjunction(l.base, l.line);
    const AdjunctionDoc& total = adjunction(l.total, l.line);
    const FunctorDoc& lb = functor(base.left, l.line);
    const FunctorDoc& le = functor(total.left, l.line);
    if (lb.source != p1.target || lb.target != p2.target)
      throw DocumentError(l.line, "lift " + l.name + ": base adjunction does not join the base categories");
    if (le.source != p1.source || le.target != p2.source)
      throw DocumentError(l.line, "lift " + l.name + ": total adjunction does not join the total categories");
    components(l.phi, category(p1.source, l.line), category(p2.target, l.line), l.line, "lift " + l.name + " phi");
    components(l.psi, category(p2.source, l.line), category(p1.target, l.line), l.line, "lift " + l.name + " psi");
  }

  void check(const InstanceDoc&) const {}
  void check(const PipelineDoc&) const {}

  const Document& doc_;
};

template <class Entries, class Index>
Entries sorted(Entries e, Index index) {
  std::stable_sort(e.begin(), e.end(), [&](const auto& a, const auto& b) { return index(a) < index(b); });
  return e;
}

void write_entries(std::ostringstream& out, const char* section, const std::vector<MapEntry>& entries,
                   const char* arrow) {
  if (entries.empty()) return;
  out << section << ":\n";
  for (const MapEntry& e : entries) out << "  " << e.from << ' ' << arrow << ' ' << e.to << '\n';
}

class Writer {
 public:
  explicit Writer(const Document& d) : doc_(d) {}

  std::string operator()(const CategoryDoc& c) const {
    std::ostringstream out;
    out << "category " << c.name << '\n';
    const CategoryNames n = names(c);
    if (!c.objects.empty()) {
      out << "objects:\n";
      for (const auto& o : c.objects) out << "  " << o.name << '\n';
    }
    if (!c.morphisms.empty()) {
      out << "morphisms:\n";
      for (const auto& m : c.morphisms) out << "  " << m.name << ' ' << m.dom << ' ' << m.cod << '\n';
    }
    write_entries(out, "identities",
                  sorted(c.identities, [&](const MapEntry& e) { return n.objects.at(e.from); }), ":");
    if (!c.compose.empty()) {
      out << "compose:\n";
      const auto cs = sorted(c.compose, [&](const CategoryDoc::Composite& e) {
        return std::pair(n.morphisms.at(e.g), n.morphisms.at(e.f));
      });
      for (const auto& e : cs) out << "  " << e.g << ' ' << e.f << " = " << e.h << '\n';
    }
    out << "end\n";
    return out.str();
  }

  std::string operator()(const FunctorDoc& f) const {
    std::ostringstream out;
    out << "functor " << f.name << ' ' << f.source << ' ' << f.target << '\n';
    const CategoryNames n = names(*doc_.find<CategoryDoc>(f.source));
    write_entries(out, "objects", sorted(f.objects, [&](const MapEntry& e) { return n.objects.at(e.from); }), "->");
    write_entries(out, "morphisms",
                  sorted(f.morphisms, [&](const MapEntry& e) { return n.morphisms.at(e.from); }), "->");
    out << "end\n";
    return out.str();
  }

  std::string operator()(const NatTransDoc& a) const {
    std::ostringstream out;
    out << "nat_trans " << a.name << ' ' << a.source << ' ' << a.target << '\n';
    write_entries(out, "components", by_object(a.components, source_of(a.source)), ":");
    out << "end\n";
    return out.str();
  }

  std::string operator()(const AdjunctionDoc& a) const {
    std::ostringstream out;
    out << "adjunction " << a.name << "\nleft " << a.left << "\nright " << a.right << '\n';
    write_entries(out, "unit", by_object(a.unit, source_of(a.left)), ":");
    write_entries(out, "counit", by_object(a.counit, source_of(a.right)), ":");
    out << "end\n";
    return out.str();
  }

  std::string operator()(const LaxDoc& m) const {
    std::ostringstream out;
    out << "lax " << m.name << "\nfrom " << m.from << "\nto " << m.to << "\ntotal " << m.total << "\nbase "
        << m.base << '\n';
    write_entries(out, "phi", by_object(m.phi, source_of(m.from)), ":");
    out << "end\n";
    return out.str();
  }

  std::string operator()(const TwoCellDoc& t) const {
    std::ostringstream out;
    out << "two_cell " << t.name << "\nfrom " << t.from << "\nto " << t.to << '\n';
    const LaxDoc& m = *doc_.find<LaxDoc>(t.from);
    const FunctorDoc& p1 = *doc_.find<FunctorDoc>(m.from);
    write_entries(out, "base", by_object(t.base, p1.target), ":");
    write_entries(out, "total", by_object(t.total, p1.source), ":");
    out << "end\n";
    return out.str();
  }

  std::string operator()(const LiftDoc& l) const {
    std::ostringstream out;
    out << "lift " << l.name << "\nlower " << l.lower << "\nupper " << l.upper << "\nbase " << l.base
        << "\ntotal " << l.total << '\n';
    write_entries(out, "phi", by_object(l.phi, source_of(l.lower)), ":");
    write_entries(out, "psi", by_object(l.psi, source_of(l.upper)), ":");
    out << "end\n";
    return out.str();
  }

  std::string operator()(const InstanceDoc& i) const { return serialize(i) + '\n'; }

  std::string operator()(const PipelineDoc& p) const {
    std::string out = "pipeline " + p.name + '\n';
    for (const auto& [command, line] : p.commands) out += "  " + command + '\n';
    return out + "end\n";
  }

 private:
  std::string source_of(const std::string& functor) const { return doc_.find<FunctorDoc>(functor)->source; }

  std::vector<MapEntry> by_object(const std::vector<MapEntry>& e, const std::string& category) const {
    const CategoryNames n = names(*doc_.find<CategoryDoc>(category));
    return sorted(e, [&](const MapEntry& x) { return n.objects.at(x.from); });
  }

  const Document& doc_;
};

int kind_rank(const Block& b) { return static_cast<int>(b.index()); }

}  // namespace

const char* block_kind(const Block& b) {
  static constexpr const char* kinds[] = {"category", "functor", "nat_trans", "adjunction", "lax",
                                          "two_cell", "lift",    "instance",  "pipeline"};
  return kinds[b.index()];
}

const std::string& block_name(const Block& b) {
  static const std::string none;
  return std::visit(
      [](const auto& x) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, InstanceDoc>)
          return none;
        else
          return x.name;
      },
      b);
}

const InstanceDoc* Document::instance() const {
  for (const Block& b : blocks)
    if (const auto* i = std::get_if<InstanceDoc>(&b)) return i;
  return nullptr;
}

void Document::merge(Document other) {
  for (Block& b : other.blocks) {
    const std::string& name = block_name(b);
    const bool clash = std::holds_alternative<InstanceDoc>(b)
                           ? instance() != nullptr
                           : std::any_of(blocks.begin(), blocks.end(), [&](const Block& x) {
                               return !std::holds_alternative<InstanceDoc>(x) && block_name(x) == name;
                             });
    if (clash) {
      const std::size_t line = std::visit([](const auto& x) { return x.line; }, b);
      throw DocumentError(line, std::string("duplicate ") + block_kind(b) + " '" + name + "'");
    }
    blocks.push_back(std::move(b));
  }
}

InstanceDoc parse_instance(const std::vector<std::string>& tokens, std::size_t line) {
  if (tokens.empty()) throw DocumentError(line, "expected an instance kind");
  InstanceDoc inst;
  inst.kind = tokens[0];
  inst.line = line;
  if (inst.kind != "pred" && inst.kind != "rel" && inst.kind != "pow")
    throw DocumentError(line, "unknown instance kind '" + inst.kind + "'");
  std::set<std::string> seen;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) throw DocumentError(line, "expected key=value, got '" + tokens[i] + "'");
    const std::string k = tokens[i].substr(0, eq);
    const std::string v = tokens[i].substr(eq + 1);
    if (!seen.insert(k).second) throw DocumentError(line, "duplicate key '" + k + "'");
    if (k == "universe") {
      inst.universe = parse_ints(v, line);
    } else if (k == "base" && inst.kind == "pow") {
      inst.base = parse_ints(v, line);
    } else if (k == "edges" && inst.kind == "pow") {
      std::size_t s = 0;
      while (s < v.size()) {
        const std::size_t e = std::min(v.find(',', s), v.size());
        const std::string item = v.substr(s, e - s);
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw DocumentError(line, "expected an edge a-b, got '" + item + "'");
        const auto a = parse_ints(item.substr(0, dash), line);
        const auto b = parse_ints(item.substr(dash + 1), line);
        if (a.size() != 1 || b.size() != 1) throw DocumentError(line, "expected an edge a-b, got '" + item + "'");
        inst.edges.emplace_back(a[0], b[0]);
        s = e + 1;
      }
    } else {
      throw DocumentError(line, "unknown key '" + k + "' for " + inst.kind);
    }
  }
  if (!seen.count("universe")) throw DocumentError(line, "instance needs universe=...");
  std::sort(inst.universe.begin(), inst.universe.end());
  if (std::adjacent_find(inst.universe.begin(), inst.universe.end()) != inst.universe.end())
    throw DocumentError(line, "universe has repeated elements");
  for (int b : inst.base)
    if (!std::binary_search(inst.universe.begin(), inst.universe.end(), b))
      throw DocumentError(line, "base element " + std::to_string(b) + " is not in the universe");
  for (const auto& [a, b] : inst.edges)
    if (!std::binary_search(inst.universe.begin(), inst.universe.end(), a) ||
        !std::binary_search(inst.universe.begin(), inst.universe.end(), b))
      throw DocumentError(line, "edge " + std::to_string(a) + "-" + std::to_string(b) + " leaves the universe");
  std::sort(inst.base.begin(), inst.base.end());
  inst.base.erase(std::unique(inst.base.begin(), inst.base.end()), inst.base.end());
  std::sort(inst.edges.begin(), inst.edges.end());
  inst.edges.erase(std::unique(inst.edges.begin(), inst.edges.end()), inst.edges.end());
  return inst;
}

std::string serialize(const InstanceDoc& inst) {
  std::string out = "instance " + inst.kind + " universe=" + ints(inst.universe);
  if (inst.kind == "pow") {
    out += " base=" + ints(inst.base) + " edges=";
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(inst.edges[i].first) + '-' + std::to_string(inst.edges[i].second);
    }
  }
  return out;
}

Document parse_document(std::string_view text) {
  Document doc;
  std::optional<RawBlock> open;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const Tokens t = split(raw);
    if (t.empty()) {
      if (nl == text.size()) break;
      continue;
    }

    if (!open) {
      if (t[0] == "instance") {
        doc.merge(Document{{parse_instance(Tokens(t.begin() + 1, t.end()), line_no)}});
      } else if (grammars().count(t[0])) {
        open = RawBlock{t, line_no, {}, {}, {}};
        section.clear();
      } else {
        throw DocumentError(line_no, "unknown block '" + t[0] + "'");
      }
    } else if (t.size() == 1 && t[0] == "end") {
      if (open->header.size() < 2) throw DocumentError(open->line, "block without a name");
      doc.merge(Document{{convert(*open)}});
      open.reset();
    } else if (open->header[0] == "pipeline") {
      open->body.push_back({t, line_no});
    } else {
      const Grammar& g = grammars().at(open->header[0]);
      if (t.size() == 1 && t[0].size() > 1 && t[0].back() == ':') {
        section = t[0].substr(0, t[0].size() - 1);
        if (!g.sections.count(section))
          throw DocumentError(line_no, "unknown section '" + t[0] + "' in " + open->header[0]);
        open->sections[section];
      } else if (t.size() == 2 && g.keys.count(t[0])) {
        require_name(t[1], line_no);
        if (!open->keys.emplace(t[0], RawLine{t, line_no}).second)
          throw DocumentError(line_no, "duplicate key '" + t[0] + "'");
        section.clear();
      } else if (section.empty()) {
        throw DocumentError(line_no, "entry outside a section: '" + join(t) + "'");
      } else {
        open->sections[section].push_back({t, line_no});
      }
    }
    if (nl == text.size()) break;
  }
  if (open) throw DocumentError(open->line, open->header[0] + " block is missing 'end'");
  Checker(doc).run();
  return doc;
}

std::string serialize(const Document& doc) {
  std::vector<const Block*> order;
  for (const Block& b : doc.blocks) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(), [](const Block* a, const Block* b) {
    return std::pair(kind_rank(*a), block_name(*a)) < std::pair(kind_rank(*b), block_name(*b));
  });
  std::string out;
  const Writer w(doc);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += '\n';
    out += std::visit(w, *order[i]);
  }
  return out;
}

CategoryPtr build_category(const CategoryDoc& c) {
  const Layout l = layout(c);
  const CategoryNames n = names(c);
  CategoryBuilder b;
  for (const auto& o : c.objects) b.add_object(o.name);
  for (const auto& m : l.morphisms) b.add_morphism(m.name, n.objects.at(m.dom), n.objects.at(m.cod));
  for (Obj x = 0; x < l.identity.size(); ++x) b.set_identity(x, l.identity[x]);
  for (const auto& e : c.compose) b.set_compose(n.morphisms.at(e.g), n.morphisms.at(e.f), n.morphisms.at(e.h));
  b.infer_identity_composites();
  return share(b.build());
}

CategoryNames category_names(const CategoryDoc& c) { return names(c); }

}  // namespace compcat::text
