#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "senlab/dpseries/dpseries.hpp"
#include "senlab/field/field.hpp"
#include "senlab/padic/newton.hpp"
#include "senlab/picard/picard.hpp"
#include "senlab/senmod/senmod.hpp"

namespace senlab::io {

using Json = nlohmann::json;
using field::Element;
using field::Field;
using padic::Scalar;

/// Parse failures carry the JSON path of the offending value.
class SchemaError : public UsageError {
 public:
  SchemaError(const std::string& path, const std::string& what) : UsageError(path + ": " + what) {}
};

Json to_json(const Scalar& s);
/// Accepts the full object form, an integer, or a decimal string "a" or
/// "a/b" (exact). `prec` caps the precision of the result.
Scalar scalar_from_json(const Json& j, long p, long prec, const std::string& path = "$");

Json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const Json& j, const std::string& path = "$");

Json to_json(const field::LocalFieldSpec& s);
/// `prec_override` replaces the spec's precision when set.
Field field_from_json(const Json& j, std::optional<long> prec_override = std::nullopt, const std::string& path = "$");

Json to_json(const Element& x);
/// {"coeffs": [[...], ...]} row-major over (j, i); a bare scalar is also
/// accepted and embedded.
Element element_from_json(const Json& j, const Field& k, const std::string& path = "$");

Json to_json(const dpseries::DPSeries& f);
/// {"e": element (default E'(pi)), "trunc": N, "coeffs": [...]}; missing
/// coefficients up to trunc are zero. `trunc_override` pads or truncates.
dpseries::DPSeries dpseries_from_json(const Json& j, const Field& k, std::optional<long> trunc_override = std::nullopt,
                                      const std::string& path = "$");

Json to_json(const senmod::Matrix& a);
senmod::Matrix matrix_from_json(const Json& j, const Field& k, const std::string& path = "$");

Json to_json(const senmod::SenModule& m);
/// {"field": spec, "dim": d, "theta": [[...]], "e": optional element}. The
/// field may instead be given separately.
senmod::SenModule senmodule_from_json(const Json& j, const Field& k, const std::string& path = "$");

Json to_json(const padic::NewtonPolygon& np);
Json to_json(const picard::BoundaryValue& b);

}  // namespace senlab::io
