#include "db/io.hpp"

#include <fstream>
#include <sstream>

#include "db/samples.hpp"

namespace db::io {

namespace {

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing key \"" + key + "\"");
  return j.at(key);
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + " must be a string");
  return j.get<std::string>();
}

int basis_index(const std::vector<BasisElement>& basis, const std::string& name) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].name == name) return static_cast<int>(i);
  throw InputError("unknown basis element \"" + name + "\"");
}

Dims dims_from_json(const json& j) {
  Dims d;
  if (j.contains("base")) d.base = as_int(j.at("base"), "dims.base");
  if (j.contains("fiber")) d.fiber = as_int(j.at("fiber"), "dims.fiber");
  if (d.base < 0 || d.fiber < 0 || d.coords() == 0 || d.coords() > 8) throw InputError("dims out of range");
  return d;
}

int coordinate_index(const Dims& d, const json& w) {
  if (w.is_number_integer()) {
    int i = w.get<int>();
    if (i < 1 || i > d.coords()) throw InputError("wedge index out of range: " + std::to_string(i));
    return i - 1;
  }
  std::string name = as_string(w, "wedge entry");
  for (int i = 0; i < d.coords(); ++i)
    if (var_name(d, i) == name) return i;
  throw InputError("unknown coordinate \"" + name + "\"");
}

Monomial monomial_from_json(const json& j, const Dims& d) {
  Monomial m;
  if (j.is_null()) return m;
  if (!j.is_object()) throw InputError("monomial must be an object {variable: exponent}");
  for (const auto& [name, e] : j.items()) {
    int ex = as_int(e, "exponent of " + name);
    if (ex < 0 || ex > 255) throw InputError("exponent out of range for " + name);
    int i = coordinate_index(d, json(name));
    m.e[i] = static_cast<std::uint8_t>(m.e[i] + ex);
  }
  return m;
}

json monomial_to_json(const Monomial& m, const Dims& d) {
  json out = json::object();
  for (int i = 0; i < d.vars(); ++i)
    if (m.e[i]) out[var_name(d, i)] = m.e[i];
  return out;
}

template <class K>
AltPoly<K> alt_from_json(const json& j, std::optional<Dims> dims, const char* kind) {
  if (!j.is_object()) throw InputError(std::string(kind) + " literal must be an object");
  Dims d;
  if (j.contains("dims")) {
    d = dims_from_json(j.at("dims"));
    if (dims && !(*dims == d)) throw InputError(std::string(kind) + " literal lives on a different space");
  } else if (dims) {
    d = *dims;
  } else {
    throw InputError(std::string(kind) + " literal needs \"dims\"");
  }
  if (j.contains("kind") && as_string(j.at("kind"), "kind") != kind)
    throw InputError(std::string("expected a ") + kind + " literal");
  AltPoly<K> out(d);
  for (const auto& t : require(j, "terms", kind)) {
    Scalar c = t.contains("coef") ? scalar_from_json(t.at("coef")) : Scalar(1);
    Monomial m = t.contains("monomial") ? monomial_from_json(t.at("monomial"), d) : Monomial{};
    AltPoly<K> term(d, Poly(m, c), 0);
    if (t.contains("wedge")) {
      for (const auto& w : t.at("wedge")) term = wedge(term, AltPoly<K>(d, poly_const(1), bit(coordinate_index(d, w))));
    }
    out += term;
  }
  return out;
}

template <class K>
json alt_to_json(const AltPoly<K>& a, const char* kind) {
  json terms = json::array();
  for (const auto& [k, c] : a) {
    json w = json::array();
    for (int i = 0; i < a.dims().coords(); ++i)
      if (k.wedge & bit(i)) w.push_back(i + 1);
    terms.push_back({{"coef", scalar_to_json(c)}, {"monomial", monomial_to_json(k.mono, a.dims())}, {"wedge", w}});
  }
  return json{{"kind", kind}, {"dims", {{"base", a.dims().base}, {"fiber", a.dims().fiber}}}, {"terms", terms}};
}

std::optional<std::vector<int>> weights_from_json(const json& j, const std::vector<BasisElement>& basis) {
  if (!j.contains("weights")) return std::nullopt;
  const json& w = j.at("weights");
  if (!w.is_object()) throw InputError("weights must be an object {basis name: weight}");
  std::vector<int> out(basis.size(), 0);
  std::vector<bool> seen(basis.size(), false);
  for (const auto& [name, v] : w.items()) {
    int i = basis_index(basis, name);
    out[i] = as_int(v, "weight of " + name);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!seen[i]) throw InputError("missing weight for \"" + basis[i].name + "\"");
  return out;
}

GLATable builtin_gla(const std::string& name) {
  if (name == "builtin:sample") return sample_gla().table();
  if (name == "builtin:nilpotent") return nilpotent_gla().table();
  throw InputError("unknown builtin algebra \"" + name + "\"");
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("not a rational number: " + j.get<std::string>());
    }
  }
  throw InputError("coefficients must be integers or strings \"p/q\", got " + j.dump());
}

json scalar_to_json(const Scalar& s) { return s.str(); }

GLATable gla_from_json(const json& j) {
  GLATable t;
  for (const auto& b : require(j, "basis", "GLA")) {
    t.basis.push_back({as_string(require(b, "name", "basis element"), "name"),
                       as_int(require(b, "degree", "basis element"), "degree")});
  }
  if (t.basis.empty()) throw InputError("GLA: empty basis");
  for (std::size_t i = 0; i < t.basis.size(); ++i)
    for (std::size_t k = i + 1; k < t.basis.size(); ++k)
      if (t.basis[i].name == t.basis[k].name) throw InputError("GLA: duplicate basis name " + t.basis[i].name);
  if (j.contains("brackets")) {
    for (const auto& e : j.at("brackets")) {
      BracketEntry b;
      b.left = basis_index(t.basis, as_string(require(e, "left", "bracket"), "left"));
      b.right = basis_index(t.basis, as_string(require(e, "right", "bracket"), "right"));
      b.result = vec_from_json(require(e, "result", "bracket"), t.basis);
      t.entries.push_back(std::move(b));
    }
  }
  return t;
}

json gla_to_json(const GLATable& t) {
  json basis = json::array(), brackets = json::array();
  for (const auto& b : t.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}});
  for (const auto& e : t.entries)
    brackets.push_back({{"left", t.basis[e.left].name}, {"right", t.basis[e.right].name},
                        {"result", vec_to_json(e.result, t.basis)}});
  return json{{"basis", basis}, {"brackets", brackets}};
}

json report_to_json(const GLAReport& r, const std::vector<BasisElement>& basis) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json w = json::array();
    for (int i : x.witness) w.push_back(i >= 0 && i < static_cast<int>(basis.size()) ? json(basis[i].name) : json(i));
    v.push_back({{"kind", x.kind}, {"witness", w}, {"residual", vec_to_json(x.residual, basis)}});
  }
  return json{{"ok", r.ok()}, {"violations", v}};
}

Vec vec_from_json(const json& j, const std::vector<BasisElement>& basis) {
  Vec v;
  if (j.is_object()) {
    for (const auto& [name, c] : j.items()) v += scalar_from_json(c) * Vec(basis_index(basis, name), Scalar(1));
  } else if (j.is_array()) {
    for (const auto& t : j)
      v += scalar_from_json(require(t, "coef", "term")) *
           Vec(basis_index(basis, as_string(require(t, "basis", "term"), "basis")), Scalar(1));
  } else if (!j.is_null()) {
    throw InputError("element must be an object {basis name: coef}");
  }
  return v;
}

json vec_to_json(const Vec& v, const std::vector<BasisElement>& basis) {
  json out = json::object();
  for (const auto& [i, c] : v) out[basis.at(i).name] = scalar_to_json(c);
  return out;
}

Multivector multivector_from_json(const json& j, std::optional<Dims> dims) {
  return alt_from_json<VectorKind>(j, dims, "multivector");
}
Form form_from_json(const json& j, std::optional<Dims> dims) { return alt_from_json<FormKind>(j, dims, "form"); }
json to_json(const Multivector& u) { return alt_to_json(u, "multivector"); }
json to_json(const Form& w) { return alt_to_json(w, "form"); }

SuperPoly superpoly_from_json(const json& j, int m) {
  if (!j.is_object()) throw InputError("super polynomial literal must be an object");
  if (j.contains("dim") && as_int(j.at("dim"), "dim") != m) throw InputError("super polynomial has the wrong dimension");
  auto coordinate_of = [m](const std::string& name) -> SuperPoly {
    if (name.size() < 2) throw InputError("unknown variable \"" + name + "\"");
    int k = 0;
    try {
      k = std::stoi(name.substr(1)) - 1;
    } catch (const std::exception&) {
      throw InputError("unknown variable \"" + name + "\"");
    }
    if (k < 0 || k >= m) throw InputError("variable index out of range: " + name);
    switch (name[0]) {
      case 'x': return SuperPoly::x(m, k);
      case 'P': return SuperPoly::P(m, k);
      case 'p': return SuperPoly::p(m, k);
      case 'v': return SuperPoly::v(m, k);
      default: throw InputError("unknown variable \"" + name + "\"");
    }
  };
  SuperPoly out(m);
  for (const auto& t : require(j, "terms", "super polynomial")) {
    SuperPoly term = SuperPoly::constant(m, t.contains("coef") ? scalar_from_json(t.at("coef")) : Scalar(1));
    if (t.contains("monomial")) {
      for (const auto& [name, e] : t.at("monomial").items()) {
        if (name.empty() || (name[0] != 'x' && name[0] != 'P')) throw InputError("even variable expected, got " + name);
        for (int r = as_int(e, "exponent"); r > 0; --r) term = term * coordinate_of(name);
      }
    }
    if (t.contains("odd"))
      for (const auto& o : t.at("odd")) {
        std::string name = as_string(o, "odd variable");
        if (name.empty() || (name[0] != 'p' && name[0] != 'v')) throw InputError("odd variable expected, got " + name);
        term = term * coordinate_of(name);
      }
    out += term;
  }
  return out;
}

json to_json(const SuperPoly& f) {
  const int m = f.dim();
  json terms = json::array();
  for (const auto& [k, c] : f) {
    json mono = json::object(), odd = json::array();
    for (int i = 0; i < 2 * m; ++i)
      if (k.mono.e[i]) mono[(i < m ? "x" : "P") + std::to_string(i % m + 1)] = k.mono.e[i];
    for (int i = 0; i < 2 * m; ++i)
      if (k.wedge & bit(i)) odd.push_back((i < m ? "p" : "v") + std::to_string(i % m + 1));
    terms.push_back({{"coef", scalar_to_json(c)}, {"monomial", mono}, {"odd", odd}});
  }
  return json{{"dim", m}, {"terms", terms}};
}

TPois tpois_from_json(const json& j, int m) {
  if (!j.is_object()) throw InputError("tpois element must be an object with keys \"form\" and \"multivector\"");
  const Dims d{m, 0, 0};
  TPois e{Form(d), Multivector(d)};
  for (const auto& [k, v] : j.items()) {
    if (k == "form") {
      e.form = form_from_json(v, d);
    } else if (k == "multivector") {
      e.mv = multivector_from_json(v, d);
    } else {
      throw InputError("unknown key in tpois element: " + k);
    }
  }
  if (!e.form.is_zero() && (!e.form.arity() || *e.form.arity() < 1))
    throw InputError("form part must be homogeneous of degree >= 1");
  if (!e.is_zero() && !tpois_degree(e)) throw InputError("tpois element is not homogeneous");
  return e;
}

json to_json(const TPois& e) { return json{{"form", to_json(e.form)}, {"multivector", to_json(e.mv)}}; }

Descriptor descriptor_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InputError("descriptor must be a JSON object");
  Descriptor D;
  std::string backend = j.contains("backend") ? as_string(j.at("backend"), "backend") : "structure";
  if (backend == "nilpotent") {
    json copy = j;
    copy["backend"] = "structure";
    copy["gla"] = "builtin:nilpotent";
    if (!copy.contains("a")) copy["a"] = {"phi", "g", "s", "r"};
    if (!copy.contains("weights")) copy["weights"] = {{"phi", 1}, {"d", -1}, {"g", 1}, {"c", 0}, {"k", 0}, {"s", 1}, {"r", 1}};
    auto out = descriptor_from_json(copy, base_dir);
    std::get<VData<StructureGLA>>(out.vdata).name = "nilpotent";
    return out;
  }
  D.backend = backend;
  if (backend == "structure") {
    const json& g = require(j, "gla", "descriptor");
    GLATable t;
    if (g.is_string()) {
      std::string name = g.get<std::string>();
      t = name.rfind("builtin:", 0) == 0 ? builtin_gla(name) : gla_from_json(read_json_file(base_dir / name));
    } else {
      t = gla_from_json(g);
    }
    auto rep = verify_gla(t);
    if (!rep.ok()) throw InputError("descriptor: the algebra fails verification (" + rep.violations[0].kind + ")");
    auto L = std::make_shared<const StructureGLA>(t);
    LinearMap P;
    if (j.contains("a")) {
      std::vector<int> keep;
      for (const auto& n : j.at("a")) keep.push_back(basis_index(t.basis, as_string(n, "a entry")));
      P = coordinate_projection(*L, keep);
    } else {
      P.images.assign(t.basis.size(), Vec());
      for (const auto& e : require(j, "projection", "descriptor"))
        P.images[basis_index(t.basis, as_string(require(e, "basis", "projection entry"), "basis"))] =
            vec_from_json(require(e, "image", "projection entry"), t.basis);
    }
    Vec delta = j.contains("delta") ? vec_from_json(j.at("delta"), t.basis) : Vec();
    auto V = structure_vdata(L, P, delta, weights_from_json(j, t.basis));
    if (j.contains("name")) V.name = as_string(j.at("name"), "name");
    D.vdata = std::move(V);
  } else if (backend == "coisotropic") {
    SubmanifoldSplit split;
    if (j.contains("split")) {
      const auto& s = j.at("split");
      split.base = as_int(require(s, "base", "split"), "split.base");
      split.fiber = as_int(require(s, "fiber", "split"), "split.fiber");
    }
    Multivector pi = multivector_from_json(require(j, "pi", "descriptor"), split.dims());
    int deg = j.contains("basis_degree") ? as_int(j.at("basis_degree"), "basis_degree") : 2;
    try {
      D.vdata = coiso_vdata(pi, split, deg);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  } else if (backend == "qgeom") {
    D.dim = as_int(require(j, "dim", "descriptor"), "dim");
    if (D.dim < 1 || D.dim > 4) throw InputError("qgeom: dim must be between 1 and 4");
    int deg = j.contains("basis_degree") ? as_int(j.at("basis_degree"), "basis_degree") : 1;
    D.vdata = qgeom_vdata(D.dim, deg);
  } else if (backend == "tpois") {
    D.dim = as_int(require(j, "dim", "descriptor"), "dim");
    if (D.dim < 1 || D.dim > 6) throw InputError("tpois: dim must be between 1 and 6");
  } else {
    throw InputError("unknown backend \"" + backend + "\"");
  }
  return D;
}

Vec elem_from_json(const json& j, const VData<StructureGLA>& V) { return vec_from_json(j, V.L->basis()); }
Multivector elem_from_json(const json& j, const VData<SchoutenAlgebra>& V) {
  return multivector_from_json(j, V.L->dims);
}
SuperPoly elem_from_json(const json& j, const VData<SuperPoissonAlgebra>& V) { return superpoly_from_json(j, V.L->m); }
json elem_to_json(const Vec& v, const VData<StructureGLA>& V) { return vec_to_json(v, V.L->basis()); }
json elem_to_json(const Multivector& v, const VData<SchoutenAlgebra>&) { return to_json(v); }
json elem_to_json(const SuperPoly& v, const VData<SuperPoissonAlgebra>&) { return to_json(v); }

}  // namespace db::io
