#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "db/io.hpp"
#include "db/suites.hpp"
#include "db/tpois.hpp"
#include "db/vdata.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using db::io::InputError;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Options {
  std::uint64_t seed = 1;
  int samples = 50;
  int max_arity = 5;
  int max_degree = 2;
  bool json_out = false;
  bool inject_fault = false;
  bool big = false;
  bool small = false;
  bool oracle = false;
  int max_terms = db::kDefaultMaxTerms;
};

// A file path, or inline JSON when the argument starts with '{' or '['.
json load(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return db::io::parse_json(arg);
  return db::io::read_json_file(arg);
}

db::io::Descriptor load_descriptor(const std::string& arg) {
  const fs::path base = !arg.empty() && (arg.front() == '{' || arg.front() == '[') ? fs::current_path() : fs::path(arg).parent_path();
  return db::io::descriptor_from_json(load(arg), base);
}

int emit(const Options& o, const json& report, bool ok) {
  if (o.json_out) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << (ok ? "ok" : "FAILED") << "\n";
    for (const auto& [k, v] : report.items()) {
      if (k == "ok") continue;
      std::cout << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  return ok ? kPass : kFail;
}

int cmd_verify_gla(const Options& o, const std::string& file) {
  auto table = db::io::gla_from_json(load(file));
  auto rep = db::verify_gla(table);
  return emit(o, db::io::report_to_json(rep, table.basis), rep.ok());
}

// Checks the V-data laws and returns the violation kinds.
template <class Lie>
json vdata_problems(const db::VData<Lie>& V) {
  json out = json::array();
  for (const auto& v : db::validate_vdata(V).violations) out.push_back(v.kind);
  return out;
}

// Runs f(algebra, parse, print) for the selected algebra of the descriptor.
template <class F>
int with_algebra(const Options& o, const db::io::Descriptor& D, F&& f) {
  if (D.backend == "tpois") {
    const int m = D.dim;
    auto A = o.oracle ? db::oracle_algebra(m) : db::tpois_algebra(m);
    return f(A, [m](const json& j) { return db::io::tpois_from_json(j, m); },
             [](const db::TPois& e) { return db::io::to_json(e); }, json::array());
  }
  return std::visit(
      [&](const auto& V) -> int {
        using T = std::decay_t<decltype(V)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          throw InputError("descriptor has no V-data");
        } else {
          json problems = vdata_problems(V);
          if (!problems.empty()) {
            return emit(o, json{{"ok", false}, {"vdata", V.name}, {"violations", problems}}, false);
          }
          if (o.big) {
            auto A = db::big_algebra(V);
            return f(A, [&V](const json& j) { return db::io::big_from_json(j, V); },
                     [&V](const auto& e) { return db::io::big_to_json(e, V); }, problems);
          }
          auto A = db::small_algebra(V);
          return f(A, [&V](const json& j) { return db::io::elem_from_json(j, V); },
                   [&V](const auto& e) { return db::io::elem_to_json(e, V); }, problems);
        }
      },
      D.vdata);
}

template <class W>
std::vector<W> parse_all(const std::vector<std::string>& args, const std::function<W(const json&)>& parse) {
  std::vector<W> out;
  for (const auto& a : args) out.push_back(parse(load(a)));
  return out;
}

int cmd_derived(const Options& o, const std::string& vdata, const std::vector<std::string>& args) {
  auto D = load_descriptor(vdata);
  return with_algebra(o, D, [&](const auto& A, auto parse, auto print, const json&) {
    using W = std::decay_t<decltype(A.zero)>;
    auto xs = parse_all<W>(args, parse);
    W r = A.m(std::span<const W>(xs));
    return emit(o, json{{"ok", true}, {"algebra", A.name}, {"arity", xs.size()}, {"result", print(r)}}, true);
  });
}

int cmd_mc(const Options& o, const std::string& vdata, const std::string& elem) {
  auto D = load_descriptor(vdata);
  return with_algebra(o, D, [&](const auto& A, auto parse, auto print, const json&) {
    auto phi = parse(load(elem));
    auto r = db::mc_residual(A, phi, o.max_terms);
    const bool ok = r.residual.is_zero() && r.terminated_by != "truncation";
    return emit(o,
                json{{"ok", ok}, {"algebra", A.name}, {"residual", print(r.residual)},
                     {"terms_evaluated", r.terms_evaluated}, {"terminated_by", r.terminated_by}},
                ok);
  });
}

int cmd_twist(const Options& o, const std::string& vdata, const std::string& alpha, const std::vector<std::string>& args) {
  auto D = load_descriptor(vdata);
  return with_algebra(o, D, [&](const auto& A, auto parse, auto print, const json&) {
    using W = std::decay_t<decltype(A.zero)>;
    auto T = db::twist(A, parse(load(alpha)), true, o.max_terms);
    auto xs = parse_all<W>(args, parse);
    W r = T.m(std::span<const W>(xs));
    return emit(o, json{{"ok", true}, {"algebra", T.name}, {"arity", xs.size()}, {"result", print(r)}}, true);
  });
}

int cmd_gauge(const Options& o, const std::string& vdata, const std::string& z, const std::string& m) {
  auto D = load_descriptor(vdata);
  return with_algebra(o, D, [&](const auto& A, auto parse, auto print, const json&) {
    auto mm = parse(load(m));
    if (!db::is_mc(A, mm, o.max_terms)) throw db::NotMaurerCartan("gauge: the point is not Maurer-Cartan");
    auto r = db::gauge_field(A, parse(load(z)), mm, o.max_terms);
    const bool ok = r.terminated_by != "truncation";
    return emit(o,
                json{{"ok", ok}, {"algebra", A.name}, {"field", print(r.value)}, {"terms_evaluated", r.terms_evaluated},
                     {"terminated_by", r.terminated_by}, {"last_nonzero", r.last_nonzero}},
                ok);
  });
}

// {"dim", "H", "pi", "B", "X"} on R^dim.
int cmd_flow(const Options& o, const std::string& file) {
  json j = load(file);
  if (!j.is_object() || !j.contains("dim")) throw InputError("flow input needs \"dim\"");
  const int m = j.at("dim").get<int>();
  if (m < 1 || m > 6) throw InputError("flow: dim must be between 1 and 6");
  const db::Dims d{m, 0, 0};
  auto get_form = [&](const char* k) { return j.contains(k) ? db::io::form_from_json(j.at(k), d) : db::Form(d); };
  auto get_mv = [&](const char* k) { return j.contains(k) ? db::io::multivector_from_json(j.at(k), d) : db::Multivector(d); };
  const auto H = get_form("H"), B = get_form("B");
  const auto pi = get_mv("pi"), X = get_mv("X");
  db::FlowCurve c;
  try {
    c = db::flow_curve(B, X, H, pi);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  auto chk = db::check_flow_curve(c, B, X, H, pi);
  const bool ok = chk.starts_at_point && chk.transport_ode && chk.integral_curve && chk.initial_velocity;
  return emit(o,
              json{{"ok", ok},
                   {"starts_at_point", chk.starts_at_point},
                   {"transport_ode", chk.transport_ode},
                   {"integral_curve", chk.integral_curve},
                   {"initial_velocity", chk.initial_velocity},
                   {"H_t", db::io::to_json(c.H)},
                   {"pi_t_numerator", db::io::to_json(c.numerator)},
                   {"pi_t_denominator", db::to_string(c.denominator, c.dims)}},
              ok);
}

int cmd_suite(const Options& o, const std::string& name) {
  db::SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.max_arity = o.max_arity;
  cfg.max_degree = o.max_degree;
  cfg.max_terms = o.max_terms;
  cfg.inject_fault = o.inject_fault;
  auto rep = db::run_suite(name, cfg);
  json j = db::to_json(rep);
  if (o.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << name << ": " << (rep.ok() ? "ok" : "FAILED") << " (" << rep.samples.size() - rep.failures() << "/"
              << rep.samples.size() << " samples pass)\n";
    for (const auto& [g, v] : j["groups"].items())
      std::cout << "  " << g << ": " << v["samples"].get<int>() - v["failures"].get<int>() << "/" << v["samples"] << "\n";
    if (!rep.summary.empty()) std::cout << "  summary: " << rep.summary.dump() << "\n";
    for (const auto& f : j["failed"]) std::cout << "  failed " << f["group"].get<std::string>() << " #" << f["index"] << "\n";
  }
  return rep.ok() ? kPass : kFail;
}

int error(const Options& o, int code, const std::string& kind, const std::string& what) {
  if (o.json_out) {
    std::cout << json{{"ok", false}, {"error", kind}, {"message", what}}.dump(2) << "\n";
  } else {
    std::cerr << "dbrack: " << kind << ": " << what << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived brackets, Maurer-Cartan residuals and gauge flows in exact arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--samples", o.samples, "samples per group")->check(CLI::PositiveNumber);
  app.add_option("--max-arity", o.max_arity, "largest relation arity")->check(CLI::Range(1, 6));
  app.add_option("--max-degree", o.max_degree, "largest coefficient degree")->check(CLI::Range(0, 6));
  app.add_flag("--json", o.json_out, "machine-readable output");

  std::string file, vdata, elem, alpha, z;
  std::vector<std::string> args;

  auto* verify = app.add_subcommand("verify-gla", "check a bracket table");
  verify->add_option("file", file)->required();

  auto algebra_flags = [&](CLI::App* c) {
    auto* s = c->add_flag("--small", o.small, "derived brackets on a (default)");
    auto* b = c->add_flag("--big", o.big, "brackets on L[1] + a");
    s->excludes(b);
    c->add_flag("--oracle", o.oracle, "tpois backend: evaluate through the super-Poisson model");
  };
  auto* derived = app.add_subcommand("derived", "evaluate a multibracket");
  derived->add_option("vdata", vdata)->required();
  derived->add_option("args", args);
  algebra_flags(derived);

  auto* mc = app.add_subcommand("mc", "Maurer-Cartan residual");
  mc->add_option("vdata", vdata)->required();
  mc->add_option("element", elem)->required();
  algebra_flags(mc);

  auto* tw = app.add_subcommand("twist", "evaluate a multibracket twisted by an MC element");
  tw->add_option("vdata", vdata)->required();
  tw->add_option("alpha", alpha)->required();
  tw->add_option("args", args);
  algebra_flags(tw);

  auto* gauge = app.add_subcommand("gauge", "gauge vector field of z at an MC point");
  gauge->add_option("vdata", vdata)->required();
  gauge->add_option("z", z)->required();
  gauge->add_option("point", elem)->required();
  algebra_flags(gauge);

  auto* flow = app.add_subcommand("flow", "integral curve of a gauge field on twisted Poisson structures");
  flow->add_option("file", file)->required();

  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "run a seeded property suite");
  suite->add_option("name", suite_name)->required()->check(CLI::IsMember(db::suite_names()));
  suite->add_flag("--inject-fault", o.inject_fault, "jacobi: flip the sign of the two-L bracket");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  if (const char* env = std::getenv("DB_MAX_TERMS")) {
    try {
      std::size_t used = 0;
      o.max_terms = std::stoi(env, &used);
      if (used != std::string(env).size() || o.max_terms < 1) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      return error(o, kInput, "input", std::string("DB_MAX_TERMS must be a positive integer, got \"") + env + "\"");
    }
  }

  try {
    if (*verify) return cmd_verify_gla(o, file);
    if (*derived) return cmd_derived(o, vdata, args);
    if (*mc) return cmd_mc(o, vdata, elem);
    if (*tw) return cmd_twist(o, vdata, alpha, args);
    if (*gauge) return cmd_gauge(o, vdata, z, elem);
    if (*flow) return cmd_flow(o, file);
    if (*suite) return cmd_suite(o, suite_name);
  } catch (const db::NotMaurerCartan& e) {
    return error(o, kFail, "not_maurer_cartan", e.what());
  } catch (const InputError& e) {
    return error(o, kInput, "input", e.what());
  } catch (const json::exception& e) {
    return error(o, kInput, "input", e.what());
  } catch (const std::invalid_argument& e) {
    return error(o, kInput, "input", e.what());
  } catch (const std::domain_error& e) {
    return error(o, kInput, "input", e.what());
  } catch (const std::exception& e) {
    return error(o, kFail, "failure", e.what());
  }
  return kInput;
}
