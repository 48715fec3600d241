#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "db/gla.hpp"
#include "db/polygeo.hpp"
#include "db/qgeom.hpp"
#include "db/tpois.hpp"
#include "db/vdata.hpp"

namespace db::io {

using json = nlohmann::json;

// Malformed or inconsistent input (as opposed to a mathematical failure).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& path);
json parse_json(const std::string& text);

// Integers or strings "p/q"; floating-point numbers are rejected.
Scalar scalar_from_json(const json& j);
json scalar_to_json(const Scalar& s);

// {"basis": [{"name", "degree"}], "brackets": [{"left", "right", "result": {name: coef}}]}
GLATable gla_from_json(const json& j);
json gla_to_json(const GLATable& t);
json report_to_json(const GLAReport& r, const std::vector<BasisElement>& basis);

// {name: coef, ...} or [{"basis": name, "coef": c}, ...]
Vec vec_from_json(const json& j, const std::vector<BasisElement>& basis);
json vec_to_json(const Vec& v, const std::vector<BasisElement>& basis);

// {"dims": {"base", "fiber"}, "kind": "form"|"multivector",
//  "terms": [{"coef", "monomial": {var: exp}, "wedge": [1-based index or name]}]}
Multivector multivector_from_json(const json& j, std::optional<Dims> dims = std::nullopt);
Form form_from_json(const json& j, std::optional<Dims> dims = std::nullopt);
json to_json(const Multivector& u);
json to_json(const Form& w);

// {"dim": m, "terms": [{"coef", "monomial": {"x1": 1, "P2": 1}, "odd": ["p1", "v2"]}]}
SuperPoly superpoly_from_json(const json& j, int m);
json to_json(const SuperPoly& f);

// {"form": literal, "multivector": literal}; either part may be omitted.
TPois tpois_from_json(const json& j, int m);
json to_json(const TPois& e);

// A V-data descriptor resolved to one of the shipped backends.
struct Descriptor {
  std::string backend;  // "structure" | "coisotropic" | "qgeom" | "tpois"
  std::variant<std::monostate, VData<StructureGLA>, VData<SchoutenAlgebra>, VData<SuperPoissonAlgebra>> vdata;
  int dim = 0;  // tpois and qgeom
};

// Relative "gla" file names resolve against base_dir.
Descriptor descriptor_from_json(const json& j, const std::filesystem::path& base_dir);

// Elements of L for each backend.
Vec elem_from_json(const json& j, const VData<StructureGLA>& V);
Multivector elem_from_json(const json& j, const VData<SchoutenAlgebra>& V);
SuperPoly elem_from_json(const json& j, const VData<SuperPoissonAlgebra>& V);
json elem_to_json(const Vec& v, const VData<StructureGLA>& V);
json elem_to_json(const Multivector& v, const VData<SchoutenAlgebra>& V);
json elem_to_json(const SuperPoly& v, const VData<SuperPoissonAlgebra>& V);

// {"l": element of L, "a": element of a}, both optional.
template <class Lie>
BigElem<typename Lie::Elem> big_from_json(const json& j, const VData<Lie>& V) {
  if (!j.is_object()) throw InputError("big-algebra element must be an object with keys \"l\" and \"a\"");
  BigElem<typename Lie::Elem> b{V.L->zero(), V.L->zero()};
  for (const auto& [k, v] : j.items()) {
    if (k == "l") {
      b.x = elem_from_json(v, V);
    } else if (k == "a") {
      b.a = elem_from_json(v, V);
      if (!b.a.is_zero() && !V.in_a(b.a)) throw InputError("\"a\" part does not lie in the subalgebra a");
    } else {
      throw InputError("unknown key in big-algebra element: " + k);
    }
  }
  return b;
}

template <class Lie>
json big_to_json(const BigElem<typename Lie::Elem>& b, const VData<Lie>& V) {
  return json{{"l", elem_to_json(b.x, V)}, {"a", elem_to_json(b.a, V)}};
}

}  // namespace db::io
