#include "stgeo/json_io.hpp"

namespace stgeo {

json encode_scalar(double x) { return x; }
json encode_scalar(const Complex& x) { return json::array({x.real(), x.imag()}); }
json encode_scalar(const Quaternion& x) { return json::array({x.q0, x.q1, x.q2, x.q3}); }

template <>
double decode_scalar<double>(const json& j) {
  if (!j.is_number()) throw parse_error("real scalar must be a number");
  return j.get<double>();
}

template <>
Complex decode_scalar<Complex>(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw parse_error("complex scalar must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <>
Quaternion decode_scalar<Quaternion>(const json& j) {
  if (!j.is_array() || j.size() != 4) throw parse_error("quaternion scalar must be [q0,q1,q2,q3]");
  for (const auto& c : j)
    if (!c.is_number()) throw parse_error("quaternion scalar must be [q0,q1,q2,q3]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

template <typename T>
json encode_matrix(const Matrix<T>& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(encode_scalar(m(i, j)));
    data.push_back(std::move(row));
  }
  return json{{"algebra", algebra_name(scalar_traits<T>::algebra)},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"data", std::move(data)}};
}

template json encode_matrix(const Matrix<double>&);
template json encode_matrix(const Matrix<Complex>&);
template json encode_matrix(const Matrix<Quaternion>&);

Algebra matrix_algebra(const json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j["algebra"].is_string())
    throw parse_error("matrix object must carry an \"algebra\" string");
  try {
    return algebra_from_name(j["algebra"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

template <typename T>
Matrix<T> decode_matrix(const json& j) {
  if (matrix_algebra(j) != scalar_traits<T>::algebra)
    throw parse_error("matrix algebra does not match the expected one");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw parse_error("matrix object needs rows, cols, data");
  const int rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
  if (rows < 0 || cols < 0) throw parse_error("matrix dimensions must be nonnegative");
  const json& data = j["data"];
  if (!data.is_array() || int(data.size()) != rows) throw parse_error("matrix data has wrong row count");
  Matrix<T> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!data[i].is_array() || int(data[i].size()) != cols)
      throw parse_error("matrix data has a ragged row");
    for (int c = 0; c < cols; ++c) m(i, c) = decode_scalar<T>(data[i][c]);
  }
  return m;
}

template Matrix<double> decode_matrix(const json&);
template Matrix<Complex> decode_matrix(const json&);
template Matrix<Quaternion> decode_matrix(const json&);

json encode_distribution(const Distribution& d, Algebra a) {
  return json{{"dist", dist_name(d.kind)}, {"n", d.n}, {"k", d.k}, {"algebra", algebra_name(a)}};
}

std::pair<Distribution, Algebra> decode_distribution(const json& j) {
  if (!j.is_object()) throw parse_error("distribution must be an object");
  for (const char* key : {"dist", "n", "k", "algebra"})
    if (!j.contains(key)) throw parse_error(std::string("distribution needs \"") + key + "\"");
  try {
    const Distribution d(dist_from_name(j["dist"].get<std::string>()), j["n"].get<int>(),
                         j["k"].get<int>());
    return {d, algebra_from_name(j["algebra"].get<std::string>())};
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

}  // namespace stgeo
