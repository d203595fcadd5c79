#include "senlab/io/json.hpp"

#include "senlab/error.hpp"

namespace senlab::io {

namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path, std::string("missing key \"") + key + "\"");
  return *it;
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long>();
}

mpz_class big_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long>()));
  if (!j.is_string()) throw SchemaError(path, "expected an integer or a decimal string");
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0) throw SchemaError(path, "not a decimal integer: " + j.get<std::string>());
  return z;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& path, const char* key) { return path + "." + key; }

}  // namespace

Json to_json(const Scalar& s) {
  Json j;
  j["p"] = s.prime();
  j["prec"] = s.is_exact() ? Json(nullptr) : Json(s.precision());
  if (s.is_zero()) {
    j["val"] = nullptr;
    j["unit"] = "0";
  } else {
    j["val"] = s.valuation();
    j["unit"] = s.unit().get_str();
  }
  return j;
}

Scalar scalar_from_json(const Json& j, long p, long prec, const std::string& path) {
  if (j.is_number_integer()) return Scalar::exact(p, j.get<long>()).with_precision(prec);
  if (j.is_string()) {
    const mpq_class q = rational_from_json(j, path);
    mpz_class den = q.get_den();
    long k = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
      den /= p;
      ++k;
    }
    if (den == 1) {
      if (q == 0) return Scalar::zero(p, prec);
      return Scalar::from_parts(p, -k, q.get_num(), padic::kExactPrecision).with_precision(prec);
    }
    if (prec >= padic::kExactPrecision) throw SchemaError(path, "rational with denominator prime to p needs a finite precision");
    return Scalar::from_rational(p, q, prec);
  }
  if (!j.is_object()) throw SchemaError(path, "expected a scalar object, an integer or a decimal string");
  const long jp = integer(member(j, "p", path), dot(path, "p"));
  if (jp != p) throw SchemaError(dot(path, "p"), "prime " + std::to_string(jp) + " does not match " + std::to_string(p));
  const Json& pr = member(j, "prec", path);
  const long sprec = pr.is_null() ? padic::kExactPrecision : integer(pr, dot(path, "prec"));
  const long use = std::min(sprec, prec);
  const Json& v = member(j, "val", path);
  if (v.is_null()) return Scalar::zero(p, use);
  const long val = integer(v, dot(path, "val"));
  const mpz_class unit = big_integer(member(j, "unit", path), dot(path, "unit"));
  if (unit == 0) throw SchemaError(dot(path, "unit"), "unit of a nonzero scalar must be nonzero");
  if (val >= use) return Scalar::zero(p, use);
  return Scalar::from_parts(p, val, unit, use);
}

Json rational_to_json(const mpq_class& q0) {
  mpq_class q = q0;
  q.canonicalize();
  return q.get_str();
}

mpq_class rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw SchemaError(path, "expected a rational as a string \"a/b\"");
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) {
    throw SchemaError(path, "not a rational: " + j.get<std::string>());
  }
  q.canonicalize();
  return q;
}

Json to_json(const field::LocalFieldSpec& s) {
  Json j;
  j["p"] = s.p;
  j["prec"] = s.prec;
  j["unramified_poly"] = Json::array();
  for (const auto& c : s.unramified) j["unramified_poly"].push_back(to_json(c));
  j["eisenstein_poly"] = Json::array();
  for (const auto& row : s.eisenstein) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(to_json(c));
    j["eisenstein_poly"].push_back(r);
  }
  return j;
}

Field field_from_json(const Json& j, std::optional<long> prec_override, const std::string& path) {
  field::LocalFieldSpec s;
  s.p = integer(member(j, "p", path), dot(path, "p"));
  if (s.p < 2) throw SchemaError(dot(path, "p"), "p must be a prime >= 2");
  mpz_class pz(std::to_string(s.p));
  if (mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) throw SchemaError(dot(path, "p"), std::to_string(s.p) + " is not prime");
  if (prec_override) {
    s.prec = *prec_override;
  } else if (j.contains("prec")) {
    s.prec = integer(j["prec"], dot(path, "prec"));
  } else {
    s.prec = padic::kDefaultPrecision;
  }
  if (s.prec < 1) throw SchemaError(dot(path, "prec"), "precision must be >= 1");
  const std::string up = dot(path, "unramified_poly");
  if (j.contains("unramified_poly")) {
    const Json& u = array(j["unramified_poly"], up);
    for (std::size_t i = 0; i < u.size(); ++i) s.unramified.push_back(scalar_from_json(u[i], s.p, padic::kExactPrecision, at(up, i)));
  } else {
    s.unramified = {Scalar::exact(s.p, -1), Scalar::one(s.p)};
  }
  const std::string ep = dot(path, "eisenstein_poly");
  const Json& e = array(member(j, "eisenstein_poly", path), ep);
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::vector<Scalar> row;
    if (e[i].is_array()) {
      for (std::size_t k = 0; k < e[i].size(); ++k)
        row.push_back(scalar_from_json(e[i][k], s.p, padic::kExactPrecision, at(at(ep, i), k)));
    } else {
      row.push_back(scalar_from_json(e[i], s.p, padic::kExactPrecision, at(ep, i)));
    }
    s.eisenstein.push_back(row);
  }
  return Field::build(s);
}

Json to_json(const Element& x) {
  const Field& k = x.field();
  Json rows = Json::array();
  for (long jj = 0; jj < k.residue_degree(); ++jj) {
    Json r = Json::array();
    for (long i = 0; i < k.ramification(); ++i) r.push_back(to_json(x.coeff(jj, i)));
    rows.push_back(r);
  }
  return Json{{"coeffs", rows}};
}

Element element_from_json(const Json& j, const Field& k, const std::string& path) {
  const long p = k.prime();
  auto entry = [&](const Json& v, const std::string& where) {
    // objects keep their stated precision; bare rationals get the field's
    const bool short_rational = v.is_string() && v.get<std::string>().find('/') != std::string::npos;
    return scalar_from_json(v, p, short_rational ? k.precision() : padic::kExactPrecision, where);
  };
  if (!j.is_object() || (j.contains("p") && !j.contains("coeffs"))) return k.from_scalar(entry(j, path));
  const std::string cp = dot(path, "coeffs");
  const Json& rows = array(member(j, "coeffs", path), cp);
  const auto f = static_cast<std::size_t>(k.residue_degree());
  const auto e = static_cast<std::size_t>(k.ramification());
  if (rows.size() != f) throw SchemaError(cp, "expected " + std::to_string(f) + " rows (residue degree), got " + std::to_string(rows.size()));
  std::vector<Scalar> c;
  for (std::size_t jj = 0; jj < f; ++jj) {
    const Json& r = array(rows[jj], at(cp, jj));
    if (r.size() != e) {
      throw SchemaError(at(cp, jj), "expected " + std::to_string(e) + " entries (ramification index), got " + std::to_string(r.size()));
    }
    for (std::size_t i = 0; i < e; ++i) c.push_back(entry(r[i], at(at(cp, jj), i)));
  }
  return k.from_coeffs(c);
}

Json to_json(const dpseries::DPSeries& f) {
  Json j;
  j["e"] = to_json(f.e());
  j["trunc"] = f.trunc();
  j["coeffs"] = Json::array();
  for (const auto& c : f.coeffs()) j["coeffs"].push_back(to_json(c));
  if (f.tail_floor()) {
    j["tail_floor"] = rational_to_json(*f.tail_floor());
    j["complete_degree"] = f.complete_degree();
  }
  return j;
}

dpseries::DPSeries dpseries_from_json(const Json& j, const Field& k, std::optional<long> trunc_override,
                                      const std::string& path) {
  const Element e = j.contains("e") ? element_from_json(j["e"], k, dot(path, "e")) : k.different();
  const std::string cp = dot(path, "coeffs");
  const Json& cs = array(member(j, "coeffs", path), cp);
  long trunc = static_cast<long>(cs.size()) - 1;
  if (j.contains("trunc")) trunc = integer(j["trunc"], dot(path, "trunc"));
  if (trunc_override) trunc = *trunc_override;
  if (trunc < 0) throw SchemaError(dot(path, "trunc"), "truncation must be >= 0");
  std::vector<Element> c;
  for (std::size_t n = 0; n < cs.size() && static_cast<long>(n) <= trunc; ++n) c.push_back(element_from_json(cs[n], k, at(cp, n)));
  while (static_cast<long>(c.size()) <= trunc) c.push_back(k.zero());
  if (j.contains("tail_floor")) {
    const long complete = j.contains("complete_degree") ? integer(j["complete_degree"], dot(path, "complete_degree")) : trunc;
    return dpseries::DPSeries(e, c, rational_from_json(j["tail_floor"], dot(path, "tail_floor")), std::min(complete, trunc));
  }
  return dpseries::DPSeries(e, c);
}

Json to_json(const senmod::Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t jj = 0; jj < a.cols(); ++jj) r.push_back(to_json(a(i, jj)));
    rows.push_back(r);
  }
  return rows;
}

senmod::Matrix matrix_from_json(const Json& j, const Field& k, const std::string& path) {
  const Json& rows = array(j, path);
  if (rows.empty()) throw SchemaError(path, "matrix has no rows");
  const std::size_t n = array(rows[0], at(path, 0)).size();
  if (n == 0) throw SchemaError(at(path, 0), "matrix has no columns");
  senmod::Matrix a(rows.size(), n, k.zero());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& r = array(rows[i], at(path, i));
    if (r.size() != n) {
      throw SchemaError(at(path, i), "row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t jj = 0; jj < n; ++jj) a(i, jj) = element_from_json(r[jj], k, at(at(path, i), jj));
  }
  return a;
}

Json to_json(const senmod::SenModule& m) {
  Json j;
  j["field"] = to_json(m.field().spec());
  j["dim"] = m.dim();
  j["theta"] = to_json(m.theta());
  j["e"] = to_json(m.e());
  return j;
}

senmod::SenModule senmodule_from_json(const Json& j, const Field& k, const std::string& path) {
  const Json& t = j.is_array() ? j : member(j, "theta", path);
  const std::string tp = j.is_array() ? path : dot(path, "theta");
  const senmod::Matrix theta = matrix_from_json(t, k, tp);
  if (!theta.square()) {
    throw SchemaError(tp, "theta must be square, got " + std::to_string(theta.rows()) + " x " + std::to_string(theta.cols()));
  }
  if (j.is_object() && j.contains("dim") && integer(j["dim"], dot(path, "dim")) != static_cast<long>(theta.rows())) {
    throw SchemaError(dot(path, "dim"), "dim does not match the size of theta");
  }
  if (j.is_object() && j.contains("e")) return senmod::SenModule(theta, element_from_json(j["e"], k, dot(path, "e")));
  return senmod::SenModule(theta);
}

Json to_json(const padic::NewtonPolygon& np) {
  Json j;
  j["certified"] = np.certified;
  j["vertices"] = Json::array();
  for (const auto& v : np.vertices) {
    j["vertices"].push_back({{"index", v.index}, {"valuation", rational_to_json(v.valuation)}, {"bound", v.bound}});
  }
  j["slopes"] = Json::array();
  for (const auto& s : np.slopes) {
    j["slopes"].push_back({{"root_valuation", rational_to_json(s.root_valuation)}, {"multiplicity", s.multiplicity}});
  }
  return j;
}

Json to_json(const picard::BoundaryValue& b) {
  return Json{{"num", b.num.get_str()}, {"den_pow", b.den_pow}, {"p", b.p}, {"rational", rational_to_json(b.rational())}};
}

}  // namespace senlab::io
