#pragma once

#include <json.hpp>

#include "stgeo/lie.hpp"

namespace stgeo {

using nlohmann::json;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar encodings: real -> bare number, complex -> [re, im],
// quaternion -> [q0, q1, q2, q3].
json encode_scalar(double x);
json encode_scalar(const Complex& x);
json encode_scalar(const Quaternion& x);

template <typename T>
T decode_scalar(const json& j);

// Matrix format:
// {"algebra": "real|complex|quaternion", "rows": n, "cols": k, "data": [[...], ...]}
template <typename T>
json encode_matrix(const Matrix<T>& m);

template <typename T>
Matrix<T> decode_matrix(const json& j);

Algebra matrix_algebra(const json& j);

// Distribution format: {"dist": "...", "n": n, "k": k, "algebra": "..."}
json encode_distribution(const Distribution& d, Algebra a);
std::pair<Distribution, Algebra> decode_distribution(const json& j);

}  // namespace stgeo
