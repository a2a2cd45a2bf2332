#include "polycalc/json_io.hpp"

#include <string>

#include "polycalc/errors.hpp"

namespace polycalc {
namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::kSchemaError, what);
}

std::size_t size_from_json(const Json& j, const char* what) {
  expect(j.is_number_unsigned() || (j.is_number_integer() && j.get<long>() >= 0),
         std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<Row> rows_from_json(const Json& j, std::size_t dim,
                                const char* what) {
  expect(j.is_array(), std::string(what) + " must be an array of rows");
  std::vector<Row> rows;
  for (const Json& r : j) {
    Vec v = vec_from_json(r);
    expect(v.size() == dim + 1, std::string(what) + " row must have " +
                                    std::to_string(dim + 1) + " entries");
    Rational b = v.back();
    v.pop_back();
    rows.push_back({std::move(v), std::move(b)});
  }
  return rows;
}

Json rows_to_json(const std::vector<Row>& rows) {
  Json out = Json::array();
  for (const Row& r : rows) {
    Json row = to_json(r.a);
    row.push_back(to_json(r.b));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

const Json& member(const Json& j, const char* key) {
  expect(j.is_object(), std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  expect(it != j.end(), std::string("missing member \"") + key + "\"");
  return *it;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) {
    return Rational(std::to_string(j.get<unsigned long long>()));
  }
  fail(ErrorKind::kSchemaError, "rational must be a string or an integer, got " + j.dump());
}

ExtReal ext_real_from_json(const Json& j) {
  if (j.is_string()) return parse_ext_real(j.get<std::string>());
  return ExtReal(rational_from_json(j));
}

Vec vec_from_json(const Json& j) {
  expect(j.is_array(), "vector must be an array, got " + j.dump());
  Vec v;
  v.reserve(j.size());
  for (const Json& x : j) v.push_back(rational_from_json(x));
  return v;
}

Matrix matrix_from_json(const Json& j) {
  expect(j.is_array(), "matrix must be an array of rows");
  Matrix m;
  for (const Json& r : j) {
    m.push_back(vec_from_json(r));
    expect(m.back().size() == m.front().size(), "ragged matrix");
  }
  return m;
}

HPolyhedron hpolyhedron_from_json(const Json& j) {
  const std::size_t dim = size_from_json(member(j, "dim"), "dim");
  std::vector<Row> ineq, eq;
  if (j.contains("ineq")) ineq = rows_from_json(j["ineq"], dim, "ineq");
  if (j.contains("eq")) eq = rows_from_json(j["eq"], dim, "eq");
  return HPolyhedron(dim, std::move(ineq), std::move(eq));
}

PolyhedralCone cone_from_json(const Json& j) {
  return PolyhedralCone(hpolyhedron_from_json(j));
}

PLFunction plfunction_from_json(const Json& j) {
  expect(j.is_object(), "function must be an object");
  if (j.contains("max_affine")) {
    const HPolyhedron domain = hpolyhedron_from_json(member(j, "domain"));
    const std::vector<Row> pieces =
        rows_from_json(j["max_affine"], domain.dim(), "max_affine");
    expect(!pieces.empty(), "max_affine needs at least one piece");
    // Pieces are written [a..., b] for x ↦ a·x + b.
    return PLFunction::max_affine(pieces, domain);
  }
  const std::size_t dim = size_from_json(member(j, "dim"), "dim");
  const HPolyhedron epi = hpolyhedron_from_json(member(j, "epi"));
  expect(epi.dim() == dim + 1, "epi must live in dim + 1 variables");
  return PLFunction(dim, epi);
}

Multimap multimap_from_json(const Json& j) {
  const std::size_t n = size_from_json(member(j, "n"), "n");
  const std::size_t m = size_from_json(member(j, "m"), "m");
  const HPolyhedron graph = hpolyhedron_from_json(member(j, "graph"));
  expect(graph.dim() == n + m, "graph must live in n + m variables");
  return Multimap(n, m, graph);
}

LinearMap linear_map_from_json(const Json& j) {
  Matrix a = matrix_from_json(member(j, "A"));
  std::size_t cols = 0;
  if (j.contains("cols")) {
    cols = size_from_json(j["cols"], "cols");
    expect(a.empty() || a.front().size() == cols, "cols disagrees with A");
  } else {
    expect(!a.empty(), "an empty A needs \"cols\"");
    cols = a.front().size();
  }
  Vec shift = j.contains("b") ? vec_from_json(j["b"]) : zeros(a.size());
  expect(shift.size() == a.size(), "b must have one entry per row of A");
  return LinearMap(std::move(a), cols, std::move(shift));
}

Json to_json(const Rational& r) { return to_string(r); }
Json to_json(const ExtReal& v) { return to_string(v); }

Json to_json(VecView v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (const Vec& r : m) out.push_back(to_json(r));
  return out;
}

Json to_json(const HPolyhedron& p) {
  return Json{{"dim", p.dim()},
              {"ineq", rows_to_json(p.ineq())},
              {"eq", rows_to_json(p.eq())}};
}

Json to_json(const PolyhedralCone& k) { return to_json(k.set()); }

Json to_json(const PLFunction& f) {
  return Json{{"dim", f.dim()}, {"epi", to_json(f.epi())}};
}

Json to_json(const Multimap& f) {
  return Json{{"n", f.n()}, {"m", f.m()}, {"graph", to_json(f.graph())}};
}

Json to_json(const LinearMap& a) {
  return Json{{"A", to_json(a.a)}, {"b", to_json(a.shift)}, {"cols", a.cols}};
}

Json to_json(const Generators& g) {
  Json out{{"dim", g.dim}};
  out["vertices"] = to_json(g.vertices);
  out["rays"] = to_json(g.rays);
  out["lineality"] = to_json(g.lineality);
  return out;
}

Json to_json(const QCReport& qc) {
  Json out{{"difference_interiority", qc.difference_interiority},
           {"omega2_bounded", qc.omega2_bounded},
           {"interiority_1_meets_2", qc.interiority_1_meets_2},
           {"interiority_2_meets_1", qc.interiority_2_meets_1},
           {"attouch_brezis", qc.attouch_brezis}};
  if (qc.localized_interiority) {
    out["localized_interiority"] = *qc.localized_interiority;
  }
  out["any_holds"] = qc.any_holds;
  return out;
}

Json to_json(const OracleReport& r) {
  Json mism = Json::array();
  for (const OracleMismatch& m : r.mismatches) {
    mism.push_back({{"input", m.input},
                    {"main_value", m.main_value},
                    {"oracle_value", m.oracle_value}});
  }
  return Json{{"checked", r.checked}, {"mismatches", std::move(mism)}};
}

}  // namespace polycalc
