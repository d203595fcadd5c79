#include <doctest.h>

#include <random>

#include "senlab/error.hpp"
#include "senlab/io/json.hpp"

using namespace senlab;
using namespace senlab::io;

namespace {

Field sqrt3(long prec = 30) {
  return field_from_json(Json::parse(R"({"p": 3, "unramified_poly": [-1, 1], "eisenstein_poly": [[-3], [0], [1]]})"), prec);
}

}  // namespace

TEST_CASE("scalar encoding") {
  const Scalar a = Scalar::from_integer(3, 45, 10);
  const Json j = to_json(a);
  CHECK(j["val"] == 2);
  CHECK(j["unit"] == "5");
  CHECK(j["prec"] == 10);
  CHECK(scalar_from_json(j, 3, 40).identical(a));
  CHECK(scalar_from_json(j, 3, 6).identical(a.with_precision(6)));
  const Scalar z = Scalar::zero(3, 7);
  CHECK(to_json(z)["val"].is_null());
  CHECK(scalar_from_json(to_json(z), 3, 40).identical(z));
  CHECK(scalar_from_json(to_json(Scalar::exact(3, -12)), 3, padic::kExactPrecision).identical(Scalar::exact(3, -12)));
  CHECK(scalar_from_json(Json("-7/9"), 3, 20).identical(Scalar::from_rational(3, mpq_class(-7, 9), 20)));
  CHECK(scalar_from_json(Json(4), 3, 20).identical(Scalar::from_integer(3, 4, 20)));
  CHECK_THROWS_AS(scalar_from_json(Json::parse(R"({"p": 5, "val": 0, "unit": "1", "prec": 3})"), 3, 20), UsageError);
  CHECK_THROWS_AS(scalar_from_json(Json("x"), 3, 20), UsageError);
}

TEST_CASE("field, element, series and module round trips") {
  const Field k = sqrt3();
  CHECK(k.ramification() == 2);
  const Field k2 = field_from_json(to_json(k.spec()));
  CHECK(k2.precision() == 30);
  const auto x = k.from_coeffs({Scalar::from_integer(3, 17, 30), Scalar::from_rational(3, mpq_class(2, 3), 30)});
  const Json jx = to_json(x);
  CHECK(jx["coeffs"].size() == 1);
  CHECK(jx["coeffs"][0].size() == 2);
  CHECK(element_from_json(jx, k).identical(x));
  CHECK(to_json(element_from_json(Json::parse(jx.dump()), k)) == jx);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"coeffs": [[1, 2, 3]]})"), k), UsageError);

  const auto f = dpseries::log_t(k, 6);
  const Json jf = to_json(f);
  const auto f2 = dpseries_from_json(jf, k);
  CHECK(to_json(f2) == jf);
  CHECK(dpseries_from_json(Json::parse(R"({"coeffs": [1]})"), k, 5).trunc() == 5);

  const Json jm = Json::parse(R"({"theta": [[0, -1], [0, 0]]})");
  const auto m = senmodule_from_json(jm, k);
  CHECK(m.dim() == 2);
  CHECK(to_json(senmodule_from_json(to_json(m), k)) == to_json(m));
  CHECK_THROWS_AS(senmodule_from_json(Json::parse(R"({"theta": [[0, -1]]})"), k), UsageError);
  CHECK_THROWS_AS(senmodule_from_json(Json::parse(R"({"theta": [[0, -1], [0]]})"), k), UsageError);
}
