#include "gabor_super/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "gabor_super/errors.hpp"

namespace gabor_super::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw FormatError(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
  return v.get<double>();
}

const json& array_of(const json& v, std::size_t size, const char* what) {
  if (!v.is_array() || v.size() != size) {
    throw FormatError(std::string(what) + " must be an array of " +
                      std::to_string(size) + " entries");
  }
  return v;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  array_of(j, 2, "complex value");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json matrix_to_json(const Eigen::Ref<const HMatrix>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

HMatrix matrix_from_json(const json& j, int dim) {
  array_of(j, static_cast<std::size_t>(dim), "matrix");
  HMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    array_of(j[r], static_cast<std::size_t>(dim), "matrix row");
    for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json signal_to_json(const VectorSignal& f) {
  json data = json::array();
  for (int l = 0; l < f.length(); ++l) {
    json point = json::array();
    for (int i = 0; i < f.channels(); ++i) point.push_back(complex_to_json(f(l, i)));
    data.push_back(std::move(point));
  }
  return json{{"L", f.length()}, {"n", f.channels()}, {"data", std::move(data)}};
}

VectorSignal signal_from_json(const json& j) {
  const int L = int_field(j, "L");
  const int n = int_field(j, "n");
  if (L < 1 || n < 1) throw FormatError("signal needs L >= 1 and n >= 1");
  const json& data = array_of(field(j, "data"), static_cast<std::size_t>(L), "signal data");
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(L) * n);
  for (const json& point : data) {
    array_of(point, static_cast<std::size_t>(n), "signal point");
    for (const json& z : point) values.push_back(complex_from_json(z));
  }
  return VectorSignal(L, n, std::move(values));
}

json coefficients_to_json(const GaborCoefficients& c) {
  json rows = json::array();
  for (Eigen::Index k = 0; k < c.c.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index m = 0; m < c.c.cols(); ++m) row.push_back(complex_to_json(c.c(k, m)));
    rows.push_back(std::move(row));
  }
  return json{{"a", c.lattice.a()},
              {"b", c.lattice.b()},
              {"L", c.lattice.length()},
              {"c", std::move(rows)}};
}

GaborCoefficients coefficients_from_json(const json& j) {
  GaborLattice lat = [&] {
    try {
      return GaborLattice(int_field(j, "a"), int_field(j, "b"), int_field(j, "L"));
    } catch (const LatticeError& e) {
      throw FormatError(std::string("coefficient lattice: ") + e.what());
    }
  }();
  const int N = lat.translates();
  const int M = lat.modulations();
  const json& rows = array_of(field(j, "c"), static_cast<std::size_t>(N), "coefficient rows");
  GaborCoefficients out{lat, Eigen::MatrixXcd(N, M)};
  for (int k = 0; k < N; ++k) {
    array_of(rows[k], static_cast<std::size_t>(M), "coefficient row");
    for (int m = 0; m < M; ++m) out.c(k, m) = complex_from_json(rows[k][m]);
  }
  return out;
}

json weight_to_json(const Weight& w) {
  json j{{"L", w.length()}, {"kind", to_string(w.kind())}};
  switch (w.kind()) {
    case WeightKind::kConstant:
      j["value"] = w(0);
      break;
    case WeightKind::kPolynomial:
      j["s"] = w.exponent();
      break;
    case WeightKind::kCustom:
      j["values"] = std::vector<double>(w.values().begin(), w.values().end());
      j["submultiplicative"] = w.is_submultiplicative();
      break;
  }
  return j;
}

WeightSpec weight_spec_from_json(const json& j) {
  WeightSpec spec;
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw FormatError("weight kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "constant") {
    spec.kind = WeightKind::kConstant;
    if (j.contains("value")) spec.value = number(j["value"], "weight value");
  } else if (k == "polynomial") {
    spec.kind = WeightKind::kPolynomial;
    spec.s = number(field(j, "s"), "polynomial exponent s");
  } else if (k == "custom") {
    spec.kind = WeightKind::kCustom;
    const json& values = field(j, "values");
    if (!values.is_array()) throw FormatError("weight values must be an array");
    for (const json& v : values) spec.values.push_back(number(v, "weight value"));
    if (j.contains("submultiplicative")) {
      if (!j["submultiplicative"].is_boolean()) {
        throw FormatError("submultiplicative must be a boolean");
      }
      spec.claim_submultiplicative = j["submultiplicative"].get<bool>();
    }
  } else {
    throw FormatError("unknown weight kind \"" + k + "\"");
  }
  return spec;
}

Weight weight_from_json(const json& j, int length) {
  if (j.contains("L") && int_field(j, "L") != length) {
    throw FormatError("weight is defined for L=" + std::to_string(int_field(j, "L")) +
                      " but the data has L=" + std::to_string(length));
  }
  return make_weight(weight_spec_from_json(j), length);
}

json correlations_to_json(const CorrelationFamily& G) {
  json fields = json::array();
  for (const MatrixField& field_n : G.G) {
    json values = json::array();
    for (int l = 0; l < field_n.length(); ++l) values.push_back(matrix_to_json(field_n[l]));
    fields.push_back(std::move(values));
  }
  return json{{"a", G.lattice.a()},
              {"b", G.lattice.b()},
              {"L", G.lattice.length()},
              {"n", G.channels()},
              {"G", std::move(fields)}};
}

json janssen_to_json(const JanssenTable& table) {
  json rows = json::array();
  for (int j = 0; j < table.lattice.a(); ++j) {
    json row = json::array();
    for (int s = 0; s < table.lattice.b(); ++s) row.push_back(matrix_to_json(table.at(j, s)));
    rows.push_back(std::move(row));
  }
  return json{{"a", table.lattice.a()},
              {"b", table.lattice.b()},
              {"L", table.lattice.length()},
              {"n", table.channels},
              {"B", std::move(rows)}};
}

json shift_operator_to_json(const ShiftOperator& A) {
  json terms = json::array();
  for (const auto& [x, m] : A.terms()) {
    json symbol = json::array();
    for (int l = 0; l < m.length(); ++l) symbol.push_back(matrix_to_json(m[l]));
    terms.push_back(json{{"x", x}, {"symbol", std::move(symbol)}});
  }
  return json{{"L", A.length()}, {"n", A.channels()}, {"terms", std::move(terms)}};
}

ShiftOperator shift_operator_from_json(const json& j) {
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw FormatError("terms must be an array");
  int L = j.contains("L") ? int_field(j, "L") : 0;
  int n = j.contains("n") ? int_field(j, "n") : 0;
  if (!terms.empty()) {
    const json& symbol = field(terms[0], "symbol");
    if (!symbol.is_array() || symbol.empty() || !symbol[0].is_array()) {
      throw FormatError("symbol must be a non-empty array of matrices");
    }
    if (L == 0) L = static_cast<int>(symbol.size());
    if (n == 0) n = static_cast<int>(symbol[0].size());
  }
  if (L < 1 || n < 1) {
    throw FormatError("shift operator needs L and n (give them explicitly when terms is empty)");
  }
  std::vector<std::pair<long, MatrixField>> parsed;
  for (const json& t : terms) {
    const long x = int_field(t, "x");
    const json& symbol = array_of(field(t, "symbol"), static_cast<std::size_t>(L), "symbol");
    MatrixField m(L, n);
    for (int l = 0; l < L; ++l) m.mutable_at(l) = matrix_from_json(symbol[l], n);
    parsed.emplace_back(x, std::move(m));
  }
  return ShiftOperator(L, n, parsed);
}

json frame_bounds_to_json(const FrameBounds& fb) {
  json j{{"A", fb.A}, {"B", fb.B}, {"is_frame", fb.is_frame}};
  j["cond"] = fb.is_frame ? json(fb.condition()) : json(nullptr);
  return j;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw FormatError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  out << text;
  if (!out) throw IoError("failed writing \"" + path + "\"");
}

}  // namespace gabor_super::json_io
