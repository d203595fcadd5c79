#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "senlab/accept/criteria.hpp"
#include "senlab/error.hpp"
#include "senlab/gamma/gamma.hpp"
#include "senlab/io/json.hpp"
#include "senlab/linalg/elimination.hpp"
#include "senlab/picard/picard.hpp"

using namespace senlab;
using io::Json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kDomain = 3, kPrecision = 4, kConvergence = 5 };

struct Globals {
  std::optional<long> prec;
  std::optional<long> trunc;
  std::string output;
};

// Inline JSON when the argument looks like JSON, a file path otherwise.
Json load(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\n");
  std::string text;
  static const std::regex number(R"(\s*-?[0-9]+(/[0-9]+)?\s*)");
  if (std::regex_match(arg, number)) {
    const auto slash = arg.find('/');
    return slash == std::string::npos ? Json(std::stol(arg)) : Json(arg.substr(first, arg.find_last_not_of(" \t\n") - first + 1));
  }
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw UsageError(what + ": cannot read file " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(what + ": invalid JSON (" + e.what() + ")");
  }
}

std::optional<long> env_prec() {
  const char* s = std::getenv("SENLAB_PREC");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end || v < 1) throw UsageError(std::string("SENLAB_PREC must be a positive integer, got \"") + s + "\"");
  return v;
}

long default_prec(const Globals& g) {
  if (g.prec) return *g.prec;
  if (auto e = env_prec()) return *e;
  return padic::kDefaultPrecision;
}

// --prec wins; then the field's own prec; then SENLAB_PREC; then the default.
field::Field load_field(const Globals& g, const Json& j) {
  std::optional<long> prec = g.prec;
  if (!prec && !(j.is_object() && j.contains("prec"))) prec = default_prec(g);
  return io::field_from_json(j, prec, "field");
}

field::Field field_for(const Globals& g, const std::string& field_arg, const Json& obj) {
  if (!field_arg.empty()) return load_field(g, load(field_arg, "--field"));
  if (obj.is_object() && obj.contains("field")) return load_field(g, obj["field"]);
  throw UsageError("no field given: pass --field or include a \"field\" key");
}

void echo(Json& out, const field::Field& k, const Globals& g) {
  out["prec"] = k.precision();
  if (g.trunc) out["trunc"] = *g.trunc;
}

Json scalars(const std::vector<padic::Scalar>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(io::to_json(s));
  return a;
}

Json vectors(const std::vector<std::vector<field::Element>>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) {
    Json r = Json::array();
    for (const auto& x : v) r.push_back(io::to_json(x));
    a.push_back(r);
  }
  return a;
}

Json valuation(const field::Valuation& v) { return Json{{"value", io::rational_to_json(v.value)}, {"exact", v.exact}}; }

Json weights_json(const std::vector<std::pair<long, long>>& w) {
  Json a = Json::array();
  for (auto [n, m] : w) a.push_back({{"weight", n}, {"multiplicity", m}});
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"senlab: computational Sen theory over p-adic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::function<Json()> action;
  int accept_status = kOk;

  app.add_option("--prec", g.prec, "working precision (absolute p-adic digits); overrides the inputs")
      ->check(CLI::PositiveNumber);
  app.add_option("--trunc", g.trunc, "divided-power truncation N; overrides the inputs")->check(CLI::NonNegativeNumber);
  app.add_option("-o,--output", g.output, "write the report here instead of stdout");

  // field
  auto* field_cmd = app.add_subcommand("field", "local fields and their elements");
  field_cmd->require_subcommand(1);
  std::string field_arg, elem_arg;
  auto* info = field_cmd->add_subcommand("info", "degree, ramification and the different e = E'(pi)");
  info->add_option("--field", field_arg, "field spec (file or inline JSON)")->required();
  info->callback([&] {
    action = [&] {
      const auto k = load_field(g, load(field_arg, "--field"));
      Json out{{"p", k.prime()}, {"residue_degree", k.residue_degree()}, {"ramification", k.ramification()},
               {"degree", k.degree()}, {"different", io::to_json(k.different())},
               {"different_valuation", valuation(k.different().valuation())}, {"spec", io::to_json(k.spec())}};
      echo(out, k, g);
      return out;
    };
  });
  auto* elem = field_cmd->add_subcommand("element", "valuation, trace and residue of an element");
  elem->add_option("--field", field_arg, "field spec")->required();
  elem->add_option("--elem", elem_arg, "element")->required();
  elem->callback([&] {
    action = [&] {
      const auto k = load_field(g, load(field_arg, "--field"));
      const auto x = io::element_from_json(load(elem_arg, "--elem"), k, "elem");
      Json out{{"element", io::to_json(x)}, {"valuation", valuation(x.valuation())}, {"trace", io::to_json(x.trace())}};
      if (!x.is_zero() && x.valuation().value >= 0) out["residue"] = x.residue();
      echo(out, k, g);
      return out;
    };
  });

  // dps
  auto* dps = app.add_subcommand("dps", "divided-power series");
  dps->require_subcommand(1);
  std::string series_arg, b_arg, direction = "to";
  auto load_series = [&](const std::string& what) {
    const Json j = load(series_arg, what);
    const auto k = field_for(g, field_arg, j);
    return std::make_pair(k, io::dpseries_from_json(j, k, g.trunc, what));
  };
  auto series_report = [&](const field::Field& k, const dpseries::DPSeries& f) {
    Json out{{"series", io::to_json(f)}};
    echo(out, k, g);
    out["trunc"] = f.trunc();
    return out;
  };
  auto* solve = dps->add_subcommand("solve-theta", "f with Theta f = g, f(0) = 0");
  solve->add_option("--g", series_arg, "series g")->required();
  solve->add_option("--field", field_arg, "field spec (else the series' \"field\" key)");
  solve->callback([&] {
    action = [&] {
      const auto [k, f] = load_series("--g");
      return series_report(k, dpseries::solve_theta(f));
    };
  });
  auto* theta = dps->add_subcommand("theta", "apply Theta = (1 + e a) d/da");
  theta->add_option("--f", series_arg, "series f")->required();
  theta->add_option("--field", field_arg, "field spec");
  theta->callback([&] {
    action = [&] {
      const auto [k, f] = load_series("--f");
      return series_report(k, dpseries::sen_theta(f));
    };
  });
  auto* coact = dps->add_subcommand("coaction", "f(a + b + e a b)");
  coact->add_option("--f", series_arg, "series f")->required();
  coact->add_option("--b", b_arg, "element b")->required();
  coact->add_option("--field", field_arg, "field spec");
  coact->callback([&] {
    action = [&] {
      const auto [k, f] = load_series("--f");
      const auto b = io::element_from_json(load(b_arg, "--b"), k, "b");
      return series_report(k, dpseries::coaction(f, b));
    };
  });
  auto* logt = dps->add_subcommand("log-t", "log(1 + e a)/e");
  logt->add_option("--field", field_arg, "field spec")->required();
  logt->callback([&] {
    action = [&] {
      const auto k = load_field(g, load(field_arg, "--field"));
      return series_report(k, dpseries::log_t(k, g.trunc.value_or(dpseries::kDefaultTrunc)));
    };
  });
  auto* transport = dps->add_subcommand("transport", "change of coordinates to or from G_a sharp");
  transport->add_option("--f", series_arg, "series f")->required();
  transport->add_option("--field", field_arg, "field spec");
  transport->add_option("--direction", direction, "to | from")->check(CLI::IsMember({"to", "from"}));
  transport->callback([&] {
    action = [&] {
      const auto [k, f] = load_series("--f");
      return series_report(k, dpseries::gsharp_transport(f, direction == "to" ? dpseries::Direction::ToGsharp
                                                                               : dpseries::Direction::FromGsharp));
    };
  });

  // senmod
  auto* sm = app.add_subcommand("senmod", "Sen modules");
  sm->require_subcommand(1);
  std::string theta_arg, chi_arg;
  long nmin = -senmod::kDefaultWeightBound, nmax = senmod::kDefaultWeightBound;
  auto load_module = [&] {
    const Json j = load(theta_arg, "--theta");
    const auto k = field_for(g, field_arg, j);
    return std::make_pair(k, io::senmodule_from_json(j, k, "theta"));
  };
  auto add_module_opts = [&](CLI::App* c) {
    c->add_option("--theta", theta_arg, "Sen module: {\"theta\": [[...]]} or a bare matrix")->required();
    c->add_option("--field", field_arg, "field spec (else the module's \"field\" key)");
  };
  auto* nht = sm->add_subcommand("nearly-ht", "nearly Hodge-Tate test");
  add_module_opts(nht);
  nht->callback([&] {
    action = [&] {
      const auto [k, m] = load_module();
      const auto r = senmod::nearly_ht_test(m);
      Json q = Json::array();
      for (const auto& c : r.q_char_poly) q.push_back(io::to_json(c));
      Json off = Json::array();
      for (const auto& v : r.offending) off.push_back(io::rational_to_json(v));
      Json poly = io::to_json(r.polygon.polygon);
      poly["zero_roots"] = r.polygon.zero_roots;
      Json out{{"verdict", r.verdict}, {"q_char_poly", q}, {"polygon", poly}, {"slopes", poly["slopes"]}, {"offending", off}};
      echo(out, k, g);
      return out;
    };
  });
  auto* wts = sm->add_subcommand("weights", "integer Hodge-Tate weights with multiplicity");
  add_module_opts(wts);
  wts->add_option("--nmin", nmin, "smallest weight tried");
  wts->add_option("--nmax", nmax, "largest weight tried");
  wts->callback([&] {
    action = [&] {
      const auto [k, m] = load_module();
      Json out{{"weights", weights_json(senmod::ht_weights(m, nmin, nmax))}, {"nmin", nmin}, {"nmax", nmax}};
      echo(out, k, g);
      return out;
    };
  });
  auto* coh = sm->add_subcommand("cohomology", "H^0 and H^1 of the Sen module");
  add_module_opts(coh);
  coh->callback([&] {
    action = [&] {
      const auto [k, m] = load_module();
      const auto c = senmod::cohomology(m);
      Json out{{"h0_dim", c.h0.size()}, {"h1_dim", c.h1.size()}, {"rank", c.rank}, {"h0", vectors(c.h0)}, {"h1", vectors(c.h1)}};
      echo(out, k, g);
      return out;
    };
  });
  auto* ops = sm->add_subcommand("operator-series", "sum_n b^n/n! prod_(i<n) (Theta - e i)");
  add_module_opts(ops);
  ops->add_option("--b", b_arg, "element b")->required();
  ops->callback([&] {
    action = [&] {
      const auto [k, m] = load_module();
      const auto b = io::element_from_json(load(b_arg, "--b"), k, "b");
      Json out{{"matrix", io::to_json(senmod::operator_series(m, b))}};
      echo(out, k, g);
      return out;
    };
  });
  auto* desc = sm->add_subcommand("descent", "semilinear descent matrix for a character value chi");
  add_module_opts(desc);
  desc->add_option("--chi", chi_arg, "scalar chi(g)")->required();
  desc->callback([&] {
    action = [&] {
      const auto [k, m] = load_module();
      const auto chi = io::scalar_from_json(load(chi_arg, "--chi"), k.prime(), k.precision(), "chi");
      Json out{{"matrix", io::to_json(senmod::semilinear_descent_matrix(m, chi))}};
      echo(out, k, g);
      return out;
    };
  });

  // gamma
  auto* gm = app.add_subcommand("gamma", "cyclotomic levels and the twisted action");
  gm->require_subcommand(1);
  long gp = 3, gmlev = 2, ga = 10, gnmin = -10, gnmax = 10;
  std::string e_arg = "1", rhs_arg;
  bool nilpotent = false;
  auto add_level_opts = [&](CLI::App* c) {
    c->add_option("--p", gp, "prime")->check(CLI::Range(2L, 1000L));
    c->add_option("--m", gmlev, "cyclotomic level")->check(CLI::Range(1L, 8L));
    c->add_option("--a", ga, "generator sigma_a: zeta -> zeta^a, chi = a");
  };
  auto* delta = gm->add_subcommand("delta", "Tate bounds for (chi^n sigma - 1)^-1");
  add_level_opts(delta);
  delta->add_option("--nmin", gnmin, "smallest n");
  delta->add_option("--nmax", gnmax, "largest n (0 is skipped)");
  delta->callback([&] {
    action = [&] {
      const long prec = default_prec(g);
      const auto level = gamma::build_level(gp, gmlev, ga, prec);
      std::vector<long> ns;
      for (long n = gnmin; n <= gnmax; ++n)
        if (n != 0) ns.push_back(n);
      const auto r = gamma::rho_bound(level, ns);
      Json per = Json::array(), norms = Json::object();
      for (auto [n, x] : r.per_n) {
        per.push_back({{"n", n}, {"norm_exponent", x}});
        norms[std::to_string(n)] = x;
      }
      return Json{{"p", gp}, {"m", gmlev}, {"a", ga}, {"degree", level.field.degree()}, {"delta", r.delta},
                  {"per_n", per}, {"norms", norms}, {"prec", prec}};
    };
  });
  auto load_operator = [&] {
    const long prec = default_prec(g);
    const auto level = gamma::build_level(gp, gmlev, ga, prec);
    const auto e = io::scalar_from_json(load(e_arg, "--e"), gp, prec, "e");
    return gamma::g_minus_one(level, e, g.trunc.value_or(8));
  };
  auto* inv = gm->add_subcommand("invert", "solve (g - 1) x = rhs by the Neumann series");
  add_level_opts(inv);
  inv->add_option("--e", e_arg, "twist parameter e in Z_p (scalar JSON or integer)");
  inv->add_option("--rhs", rhs_arg, "right-hand side: [scalar, ...] or {\"rhs\": [...]}")->required();
  inv->add_flag("--nilpotent", nilpotent, "use the finite sum even when |rho M| >= 1");
  inv->callback([&] {
    action = [&] {
      const auto t = load_operator();
      const Json j = load(rhs_arg, "--rhs");
      const Json& arr = j.is_object() && j.contains("rhs") ? j["rhs"] : j;
      if (!arr.is_array()) throw io::SchemaError("rhs", "expected an array of scalars");
      std::vector<padic::Scalar> rhs;
      for (std::size_t i = 0; i < arr.size(); ++i)
        rhs.push_back(io::scalar_from_json(arr[i], gp, t.level.precision, "rhs[" + std::to_string(i) + "]"));
      const auto r = gamma::neumann_invert(t, rhs, nilpotent);
      Json out{{"solution", scalars(r.solution)}, {"residual_valuation", r.residual_valuation}, {"terms", r.terms},
               {"rho_m_norm_exponent", r.norm_exponent ? Json(*r.norm_exponent) : Json(nullptr)},
               {"prec", t.level.precision}, {"trunc", t.trunc}, {"dimension", t.matrix.rows()}};
      return out;
    };
  });
  auto* kern = gm->add_subcommand("kernel", "dimension of ker(g - 1) on D_N");
  add_level_opts(kern);
  kern->add_option("--e", e_arg, "twist parameter e in Z_p");
  kern->callback([&] {
    action = [&] {
      const auto t = load_operator();
      const auto ne = gamma::norm_exponent(t.rho_m);
      return Json{{"nullity", gamma::kernel_check(t)}, {"rho_m_norm_exponent", ne ? Json(*ne) : Json(nullptr)},
                  {"y_valuation", t.y.valuation()}, {"prec", t.level.precision}, {"trunc", t.trunc}};
    };
  });

  // picard
  auto* pc = app.add_subcommand("picard", "the boundary map (1/p) Tr: K -> Q_p/Z_p");
  pc->require_subcommand(1);
  long lattice_s = 0, order = 1;
  auto* bnd = pc->add_subcommand("boundary", "boundary of an element");
  bnd->add_option("--field", field_arg, "field spec")->required();
  bnd->add_option("--elem", elem_arg, "element")->required();
  bnd->callback([&] {
    action = [&] {
      const auto k = load_field(g, load(field_arg, "--field"));
      const auto x = io::element_from_json(load(elem_arg, "--elem"), k, "elem");
      const auto b = picard::boundary(x);
      Json out = io::to_json(b);
      out["in_picard_image"] = b.is_zero();
      echo(out, k, g);
      return out;
    };
  });
  auto* lat = pc->add_subcommand("kernel", "kernel of the boundary on pi^-s O_K");
  lat->add_option("--field", field_arg, "field spec")->required();
  lat->add_option("--s", lattice_s, "lattice exponent s >= 0");
  lat->callback([&] {
    action = [&] {
      const auto k = load_field(g, load(field_arg, "--field"));
      const auto r = picard::kernel_lattice(k, lattice_s);
      Json basis = Json::array();
      for (const auto& x : r.kernel_basis) basis.push_back(io::to_json(x));
      Json out{{"s", r.s}, {"kernel_basis", basis}, {"traces", scalars(r.traces)}, {"pivot", r.pivot},
               {"image_order", Json{{"p", k.prime()}, {"den_pow", r.image_order}}}};
      echo(out, k, g);
      return out;
    };
  });
  auto* wit = pc->add_subcommand("witness", "element whose boundary has order exactly p^k");
  wit->add_option("--field", field_arg, "field spec")->required();
  wit->add_option("--k", order, "order exponent k >= 0");
  wit->callback([&] {
    action = [&] {
      const auto k = load_field(g, load(field_arg, "--field"));
      const auto x = picard::surjectivity_witness(k, order);
      Json out{{"element", io::to_json(x)}, {"boundary", io::to_json(picard::boundary(x))}};
      echo(out, k, g);
      return out;
    };
  });

  // accept
  auto* acc = app.add_subcommand("accept", "run acceptance criteria");
  std::string suite_name = "all";
  acc->add_option("suite", suite_name, "all | dps | senmod | gamma | picard | 1..10");
  acc->callback([&] {
    action = [&] {
      Json results = Json::array();
      for (int id : accept::suite(suite_name)) {
        const auto r = accept::run(id);
        std::fprintf(stderr, "%s\n", accept::summary_line(r).c_str());
        Json checks = Json::array();
        for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        results.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"checks", checks},
                           {"budget_seconds", r.budget}, {"error", r.error}});
        if (!r.pass()) accept_status = kFailed;
      }
      return Json{{"suite", suite_name}, {"criteria", results}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto fail = [](int code, const char* kind, const std::string& msg) {
    std::cout << Json{{"error", {{"kind", kind}, {"message", msg}}}}.dump(2) << "\n";
    std::cerr << "senlab: " << kind << " error: " << msg << "\n";
    return code;
  };
  try {
    if (!action) throw UsageError("no operation selected");
    const std::string text = action().dump(2) + "\n";
    if (g.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(g.output);
      if (!out) throw UsageError("cannot write " + g.output);
      out << text;
    }
    return accept_status;
  } catch (const UsageError& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const DomainError& e) {
    return fail(kDomain, "domain", e.what());
  } catch (const PrecisionError& e) {
    return fail(kPrecision, "precision", e.what());
  } catch (const ConvergenceError& e) {
    return fail(kConvergence, "convergence", e.what());
  } catch (const Json::exception& e) {
    return fail(kUsage, "usage", std::string("JSON: ") + e.what());
  }
}
