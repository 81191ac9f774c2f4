#include "treecs/json_io.hpp"

#include "treecs/error.hpp"

namespace treecs::json {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::uint64_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string(what) + " must be a natural number");
  }
  return j.get<std::uint64_t>();
}

Json write_matrix(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(write_rational(v));
    out.push_back(std::move(r));
  }
  return out;
}

Matrix read_matrix(const Json& j, const char* what) {
  Matrix m;
  for (const auto& row : array(j, what)) {
    std::vector<Rational> r;
    for (const auto& v : array(row, what)) r.push_back(read_rational(v));
    m.push_back(std::move(r));
  }
  return m;
}

Json write_slot_key(const Slot& s) { return Json{{"node", write_node(s.first)}, {"copy", s.second}}; }

Slot read_slot_key(const Json& j) {
  return {read_node(field(j, "node")), static_cast<unsigned>(natural(field(j, "copy"), "copy"))};
}

}  // namespace

Json write_rational(const Rational& q) { return to_string(q); }
Rational read_rational(const Json& j) { return parse_rational(text(j, "rational")); }

Json write_ordinal(const Ordinal& a) { return a.to_string(); }
Ordinal read_ordinal(const Json& j) { return Ordinal::parse(text(j, "ordinal")); }

Json write_node(const Node& s) {
  Json out = Json::array();
  for (auto e : s.entries()) out.push_back(e);
  return out;
}

Node read_node(const Json& j) {
  std::vector<std::uint64_t> entries;
  for (const auto& e : array(j, "node")) entries.push_back(natural(e, "node entry"));
  return Node(std::move(entries));
}

Json write_schema(const TreeSchema& t) {
  if (t.is_full()) return Json{{"kind", "full"}};
  return Json{{"kind", "canonical"}, {"rank", write_ordinal(t.root_rank())}};
}

TreeSchema read_schema(const Json& j) {
  const std::string kind = text(field(j, "kind"), "kind");
  if (kind == "full") return TreeSchema::full();
  if (kind == "canonical") return TreeSchema::canonical(read_ordinal(field(j, "rank")));
  throw ParseError("unknown tree kind '" + kind + "'");
}

Json write_trunk(const Trunk& t) {
  Json out = Json::array();
  for (const Node& s : t.nodes()) out.push_back(write_node(s));
  return out;
}

Trunk read_trunk(const Json& j, const TreeSchema& schema) {
  std::set<Node> nodes;
  for (const auto& n : array(j, "trunk")) nodes.insert(read_node(n));
  return validate_trunk(schema, nodes);
}

Json write_element(const Element& a) {
  Json coeffs = Json::array();
  for (unsigned i = 1; i <= a.order(); ++i) {
    for (const auto& [s, v] : a.copy_coeffs(i)) {
      coeffs.push_back(Json{{"node", write_node(s)}, {"copy", i}, {"value", write_rational(v)}});
    }
  }
  return Json{{"tree", write_schema(a.schema())}, {"order", a.order()}, {"coeffs", std::move(coeffs)}};
}

Element read_element(const Json& j) {
  const auto order = natural(field(j, "order"), "order");
  Element a(read_schema(field(j, "tree")), static_cast<unsigned>(order));
  for (const auto& c : array(field(j, "coeffs"), "coeffs")) {
    a.add_to(read_node(field(c, "node")), static_cast<unsigned>(natural(field(c, "copy"), "copy")),
             read_rational(field(c, "value")));
  }
  return a;
}

Json write_word(const BinWord& w) { return w.bits(); }
BinWord read_word(const Json& j) { return BinWord::parse(text(j, "word")); }

Json write_point(const CantorPoint& x) { return Json{{"prefix", x.prefix().bits()}, {"tail", x.tail()}}; }

CantorPoint read_point(const Json& j) {
  const auto tail = natural(field(j, "tail"), "tail");
  if (tail > 1) throw ParseError("tail must be 0 or 1");
  return CantorPoint(read_word(field(j, "prefix")), static_cast<int>(tail));
}

Json write_step(const StepFunction& f) {
  Json terms = Json::array();
  for (const auto& [w, c] : f.terms()) terms.push_back(Json{{"word", w.bits()}, {"value", write_rational(c)}});
  return Json{{"terms", std::move(terms)}};
}

StepFunction read_step(const Json& j) {
  StepFunction f;
  for (const auto& t : array(field(j, "terms"), "terms")) {
    f.add_term(read_word(field(t, "word")), read_rational(field(t, "value")));
  }
  return f;
}

Json write_ordstep(const OrdStepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    pieces.push_back(
        Json{{"lo", write_ordinal(p.lo)}, {"hi", write_ordinal(p.hi)}, {"value", write_rational(p.value)}});
  }
  return Json{{"top", write_ordinal(f.top())}, {"pieces", std::move(pieces)}};
}

OrdStepFunction read_ordstep(const Json& j) {
  std::vector<OrdPiece> pieces;
  for (const auto& p : array(field(j, "pieces"), "pieces")) {
    pieces.push_back({read_ordinal(field(p, "lo")), read_ordinal(field(p, "hi")), read_rational(field(p, "value"))});
  }
  return OrdStepFunction::from_pieces(read_ordinal(field(j, "top")), std::move(pieces));
}

Json write_functional(const HostFunctional& mu) {
  Json atoms = Json::array();
  for (const auto& [x, m] : mu.atoms()) atoms.push_back(Json{{"point", write_point(x)}, {"mass", write_rational(m)}});
  return Json{{"atoms", std::move(atoms)}};
}

HostFunctional read_functional(const Json& j) {
  HostFunctional mu;
  for (const auto& a : array(field(j, "atoms"), "atoms")) {
    mu.add_mass(read_point(field(a, "point")), read_rational(field(a, "mass")));
  }
  return mu;
}

Json write_projtree(const ProjTreeData& d) {
  Json vectors = Json::array();
  for (const auto& [slot, f] : d.vectors) {
    Json e = write_slot_key(slot);
    e["vector"] = write_step(f);
    vectors.push_back(std::move(e));
  }
  Json functionals = Json::array();
  for (const auto& [slot, mu] : d.functionals) {
    Json e = write_slot_key(slot);
    e["functional"] = write_functional(mu);
    functionals.push_back(std::move(e));
  }
  return Json{{"tree", write_schema(d.schema)},
              {"order", d.order},
              {"trunk", write_trunk(d.trunk)},
              {"vectors", std::move(vectors)},
              {"functionals", std::move(functionals)}};
}

ProjTreeData read_projtree(const Json& j) {
  ProjTreeData d;
  d.schema = j.contains("tree") ? read_schema(field(j, "tree")) : TreeSchema::full();
  d.order = j.contains("order") ? static_cast<unsigned>(natural(field(j, "order"), "order")) : 1;
  d.trunk = read_trunk(field(j, "trunk"), d.schema);
  for (const auto& e : array(field(j, "vectors"), "vectors")) {
    d.vectors[read_slot_key(e)] = read_step(field(e, "vector"));
  }
  for (const auto& e : array(field(j, "functionals"), "functionals")) {
    d.functionals[read_slot_key(e)] = read_functional(field(e, "functional"));
  }
  d.validate();
  return d;
}

Json write_operator(const FiniteOperator& op) {
  return Json{{"K", op.K}, {"L", op.L}, {"T", write_matrix(op.T)}, {"P", write_matrix(op.P)}};
}

FiniteOperator read_operator(const Json& j) {
  FiniteOperator op;
  op.K = natural(field(j, "K"), "K");
  op.L = natural(field(j, "L"), "L");
  op.T = read_matrix(field(j, "T"), "T");
  op.P = read_matrix(field(j, "P"), "P");
  return op;
}

Json write_extraction(const Extraction& ex) {
  Json rho = Json::array();
  Json sigma = Json::array();
  for (std::size_t y : ex.F) {
    rho.push_back(Json{{"y", y}, {"x", ex.rho.at(y)}});
    sigma.push_back(Json{{"y", y}, {"sign", ex.sigma.at(y)}});
  }
  return Json{{"F", ex.F}, {"rho", std::move(rho)}, {"sigma", std::move(sigma)}, {"phi", write_matrix(ex.phi)}};
}

Extraction read_extraction(const Json& j) {
  Extraction ex;
  for (const auto& y : array(field(j, "F"), "F")) ex.F.push_back(natural(y, "F entry"));
  for (const auto& r : array(field(j, "rho"), "rho")) ex.rho[natural(field(r, "y"), "y")] = natural(field(r, "x"), "x");
  for (const auto& s : array(field(j, "sigma"), "sigma")) {
    const Json& v = field(s, "sign");
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) throw ParseError("sign must be 1 or -1");
    ex.sigma[natural(field(s, "y"), "y")] = v.get<int>();
  }
  ex.phi = read_matrix(field(j, "phi"), "phi");
  return ex;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace treecs::json
