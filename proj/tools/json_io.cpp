#include "json_io.hpp"

#include <limits>
#include <regex>

namespace shimura::io {

namespace {

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::ParseError,
          std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long parse_long(const Json& j, const char* what) {
  require(j.is_number_integer(), ErrorKind::ParseError, std::string(what) + " must be an integer");
  return j.get<long>();
}

std::vector<Json> parse_array(const Json& j, const char* what) {
  require(j.is_array(), ErrorKind::ParseError, std::string(what) + " must be an array");
  return std::vector<Json>(j.begin(), j.end());
}

}  // namespace

Json to_json(const mpz_class& x) {
  if (x >= 0 && mpz_fits_ulong_p(x.get_mpz_t())) return Json(x.get_ui());
  if (x < 0 && mpz_fits_slong_p(x.get_mpz_t())) return Json(x.get_si());
  return Json(x.get_str());
}

mpz_class parse_integer(const Json& j) {
  if (j.is_number_unsigned()) return mpz_class(j.get<unsigned long>());
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class x;
    require(x.set_str(j.get<std::string>(), 10) == 0, ErrorKind::ParseError,
            "malformed integer string");
    return x;
  }
  raise(ErrorKind::ParseError, "expected an integer");
}

Json to_json(const WittContext& ctx) {
  Json lift = Json::array();
  for (const auto& c : ctx.lift_poly()) lift.push_back(to_json(c));
  return Json{{"p", ctx.p()}, {"m", ctx.degree()}, {"n", ctx.precision()}, {"lift_poly", lift}};
}

WittContext parse_context(const Json& j) {
  const long p = parse_long(field(j, "p"), "p");
  const long m = j.contains("m") ? parse_long(j.at("m"), "m") : 1;
  const long n = parse_long(field(j, "n"), "n");
  require(p >= 2, ErrorKind::NotPrime, "p must be a prime");
  if (j.contains("lift_poly")) {
    std::vector<mpz_class> lift;
    for (const auto& c : parse_array(j.at("lift_poly"), "lift_poly")) lift.push_back(parse_integer(c));
    require(static_cast<long>(lift.size()) == m + 1, ErrorKind::ParseError,
            "lift_poly must have m + 1 coefficients");
    return WittContext::with_lift_poly(static_cast<std::uint64_t>(p), static_cast<int>(n), lift);
  }
  return make_context(static_cast<std::uint64_t>(p), static_cast<int>(m), static_cast<int>(n));
}

Json to_json(const WittElem& x) {
  Json out = Json::array();
  for (const auto& c : x.coeffs()) out.push_back(to_json(c));
  return out;
}

WittElem parse_elem(const WittContext& ctx, const Json& j) {
  if (j.is_object()) return parse_elem(ctx, field(j, "coeffs"));
  if (j.is_array()) {
    require(static_cast<int>(j.size()) <= ctx.degree(), ErrorKind::ParseError,
            "element has more than m coefficients");
    std::vector<mpz_class> coeffs(ctx.degree(), 0);
    for (std::size_t i = 0; i < j.size(); ++i) coeffs[i] = parse_integer(j[i]);
    return ctx.element(std::move(coeffs));
  }
  return ctx.from_integer(parse_integer(j));
}

Json to_json(const WMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t jj = 0; jj < m.cols(); ++jj) row.push_back(to_json(m(i, jj)));
    rows.push_back(row);
  }
  return rows;
}

WMatrix parse_matrix(const WittContext& ctx, const Json& j) {
  const auto rows = parse_array(j, "matrix");
  require(!rows.empty(), ErrorKind::ParseError, "matrix has no rows");
  const std::size_t cols = parse_array(rows.front(), "matrix row").size();
  std::vector<WittElem> data;
  for (const auto& row : rows) {
    const auto entries = parse_array(row, "matrix row");
    require(entries.size() == cols, ErrorKind::ParseError, "ragged matrix");
    for (const auto& e : entries) data.push_back(parse_elem(ctx, e));
  }
  return WMatrix(rows.size(), cols, std::move(data));
}

Json to_json(const FCrystal& c) {
  Json out{{"ctx", to_json(c.context())},
           {"rank", c.rank()},
           {"frobenius", to_json(c.frobenius().matrix)}};
  if (c.verschiebung()) out["verschiebung"] = to_json(c.verschiebung()->matrix);
  return out;
}

FCrystal parse_crystal(const Json& j) {
  const WittContext ctx = parse_context(field(j, "ctx"));
  WMatrix f = parse_matrix(ctx, field(j, "frobenius"));
  if (j.contains("rank"))
    require(parse_long(j.at("rank"), "rank") == static_cast<long>(f.rows()),
            ErrorKind::ParseError, "rank does not match the Frobenius matrix");
  std::optional<WMatrix> v;
  if (j.contains("verschiebung") && !j.at("verschiebung").is_null())
    v = parse_matrix(ctx, j.at("verschiebung"));
  return FCrystal::make(std::move(f), std::move(v));
}

Json to_json(const Rational& r) { return Json::array({r.numerator(), r.denominator()}); }

Json to_json(const NewtonPolygon& np) {
  Json out = Json::array();
  for (const auto& part : np.parts())
    out.push_back(Json::array({part.slope.numerator(), part.slope.denominator(), part.multiplicity}));
  return out;
}

Json vertices_json(const NewtonPolygon& np) {
  Json out = Json::array();
  for (const auto& [x, y] : np.vertices()) out.push_back(Json::array({x, to_json(y)}));
  return out;
}

Json to_json(const PelDatum& d) {
  return Json{{"p", d.p}, {"n", d.n}, {"f", d.local_degrees}, {"g", d.g}};
}

PelDatum parse_datum(const Json& j) {
  const long p = parse_long(field(j, "p"), "p");
  require(p >= 2, ErrorKind::NotPrime, "p must be a prime");
  const long n = parse_long(field(j, "n"), "n");
  std::vector<int> f;
  for (const auto& x : parse_array(field(j, "f"), "f")) f.push_back(static_cast<int>(parse_long(x, "f_i")));
  const long g = parse_long(field(j, "g"), "g");
  return PelDatum::make(static_cast<std::uint64_t>(p), static_cast<int>(n), std::move(f),
                        static_cast<int>(g));
}

Embedding parse_label(const PelDatum& datum, const std::string& label) {
  static const std::regex re(R"(^(phi|phibar)(\[(\d+)\])?_(\d+)(\*)?$)");
  std::smatch m;
  require(std::regex_match(label, m, re), ErrorKind::ParseError,
          "malformed embedding label \"" + label + "\"");
  const int orbit = m[3].matched ? std::stoi(m[3].str()) : 1;
  require(orbit >= 1 && orbit <= datum.orbits(), ErrorKind::InvalidArgument,
          "orbit of \"" + label + "\" out of range");
  const int f = datum.local_degrees[orbit - 1];
  const int i = std::stoi(m[4].str());
  require(i >= 1 && i <= f, ErrorKind::InvalidArgument, "index of \"" + label + "\" out of range");
  return Embedding{orbit, i - 1 + (m[5].matched ? f : 0), m[1].str() == "phibar"};
}

Json to_json(const TPoly& x) {
  Json out = Json::array();
  int last = x.truncation() - 1;
  while (last >= 0 && x.coeff(last).is_zero()) --last;
  for (int k = 0; k <= last; ++k) out.push_back(to_json(x.coeff(k)));
  return out;
}

Json to_json(const TMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const HNProfile& h) {
  Json out = Json::array();
  for (const auto& [rank, degree] : h.pieces()) out.push_back(Json::array({rank, degree}));
  return out;
}

Json to_json(const TruncPoly& x) {
  Json out = Json::array();
  int last = x.truncation() - 1;
  while (last >= 0 && x.coeff(last) == 0) --last;
  for (int k = 0; k <= last; ++k) out.push_back(x.coeff(k));
  return out;
}

TruncPoly parse_trunc_poly(std::uint64_t p, int truncation, const Json& j) {
  if (j.is_number_integer()) return parse_trunc_poly(p, truncation, Json::array({j}));
  const auto coeffs = parse_array(j, "polynomial");
  require(static_cast<int>(coeffs.size()) <= truncation, ErrorKind::ParseError,
          "polynomial exceeds the truncation order");
  std::vector<std::uint64_t> c;
  const mpz_class pz(static_cast<unsigned long>(p));
  for (const auto& x : coeffs) {
    mpz_class v = parse_integer(x) % pz;
    if (v < 0) v += pz;
    c.push_back(v.get_ui());
  }
  return TruncPoly(p, truncation, std::move(c));
}

Json to_json(const PMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

ConnectionModule parse_connection(const Json& j) {
  const long p = parse_long(field(j, "p"), "p");
  require(p >= 2, ErrorKind::NotPrime, "p must be a prime");
  const long n = parse_long(field(j, "N"), "N");
  require(n >= 1, ErrorKind::InvalidArgument, "N must be positive");
  const auto rows = parse_array(field(j, "matrix"), "matrix");
  if (j.contains("rank"))
    require(parse_long(j.at("rank"), "rank") == static_cast<long>(rows.size()),
            ErrorKind::ParseError, "rank does not match the matrix");
  require(!rows.empty(), ErrorKind::ParseError, "matrix has no rows");
  std::vector<TruncPoly> data;
  for (const auto& row : rows) {
    const auto entries = parse_array(row, "matrix row");
    require(entries.size() == rows.size(), ErrorKind::ParseError, "matrix must be square");
    for (const auto& e : entries)
      data.push_back(parse_trunc_poly(static_cast<std::uint64_t>(p), static_cast<int>(n), e));
  }
  return ConnectionModule::make(static_cast<std::uint64_t>(p), static_cast<int>(n),
                                PMatrix(rows.size(), rows.size(), std::move(data)));
}

Json to_json(const ConnectionModule& cm) {
  return Json{{"p", cm.p()}, {"N", cm.truncation()}, {"rank", cm.rank()},
              {"matrix", to_json(cm.matrix())}};
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace shimura::io
