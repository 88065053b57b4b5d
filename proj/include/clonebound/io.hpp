// Copyright 2026 The clonebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLONEBOUND_IO_HPP
#define CLONEBOUND_IO_HPP

#include <charconv>
#include <string>
#include <vector>

#include "json.hpp"

#include "clonebound/clone.hpp"
#include "clonebound/matkernel.hpp"
#include "clonebound/measure.hpp"
#include "clonebound/states.hpp"

namespace clonebound {

using Json = nlohmann::json;

/// 17 significant digits with a '.' decimal separator, independent of the
/// global locale.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace io {

namespace detail {

inline void require_json(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, "malformed JSON: " + what);
}

inline const Json& field(const Json& j, const char* key) {
  require_json(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Json entries_to_json(const ComplexMatrix& m) {
  Json arr = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) arr.push_back({m(i, k).real(), m(i, k).imag()});
  }
  return arr;
}

inline Complex complex_from_json(const Json& e) {
  require_json(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
               "complex entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

inline Index positive_index(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require_json(v.is_number_integer() && v.get<long long>() > 0, std::string("'") + key + "' must be a positive integer");
  return static_cast<Index>(v.get<long long>());
}

inline ComplexMatrix entries_from_json(const Json& arr, Index rows, Index cols) {
  require_json(arr.is_array() && arr.size() == static_cast<std::size_t>(rows * cols),
               "entry count does not match the declared shape");
  ComplexMatrix m(rows, cols);
  std::size_t n = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(arr[n++]);
  }
  return m;
}

}  // namespace detail

/// General matrix: {rows, cols, entries: [[re, im], ...]} row-major.
inline Json matrix_to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", detail::entries_to_json(m)}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const Index rows = detail::positive_index(j, "rows");
  const Index cols = detail::positive_index(j, "cols");
  clonebound::detail::require_dim_cap(std::max(rows, cols), "matrix_from_json");
  return detail::entries_from_json(detail::field(j, "entries"), rows, cols);
}

/// Density matrix: {dim, entries: [[re, im], ...]} row-major.
inline Json to_json(const DensityMatrix& rho) {
  return {{"dim", rho.dim()}, {"entries", detail::entries_to_json(rho.op())}};
}

inline ComplexMatrix square_from_json(const Json& j) {
  const Index dim = detail::positive_index(j, "dim");
  clonebound::detail::require_dim_cap(dim, "square_from_json");
  return detail::entries_from_json(detail::field(j, "entries"), dim, dim);
}

inline DensityMatrix density_from_json(const Json& j) { return DensityMatrix(square_from_json(j)); }

/// Pure state: {dim, amplitudes: [[re, im], ...]}.
inline Json to_json(const PureState& psi) {
  return {{"dim", psi.dim()}, {"amplitudes", detail::entries_to_json(psi.amp())}};
}

inline PureState pure_from_json(const Json& j) {
  const Index dim = detail::positive_index(j, "dim");
  clonebound::detail::require_dim_cap(dim, "pure_from_json");
  return PureState(detail::entries_from_json(detail::field(j, "amplitudes"), dim, 1).col(0));
}

/// POVM: {dim, elements: [{dim, entries}, ...]}.
inline Json to_json(const POVM& povm) {
  Json els = Json::array();
  for (const auto& e : povm.elements()) {
    els.push_back({{"dim", e.rows()}, {"entries", detail::entries_to_json(e)}});
  }
  return {{"dim", povm.dim()}, {"elements", els}};
}

inline POVM povm_from_json(const Json& j) {
  const Index dim = detail::positive_index(j, "dim");
  const Json& els = detail::field(j, "elements");
  detail::require_json(els.is_array() && !els.empty(), "'elements' must be a nonempty array");
  std::vector<ComplexMatrix> out;
  for (const auto& e : els) {
    out.push_back(square_from_json(e));
    detail::require_json(out.back().rows() == dim, "element dimension differs from 'dim'");
  }
  return POVM(std::move(out));
}

/// Cloning setup: {d, N, L, env_dim, rho1, rho2, upsilon1, upsilon2, v}.
inline Json to_json(const CloningSetup& s) {
  return {{"d", s.d()},
          {"N", s.n_in},
          {"L", s.n_out},
          {"env_dim", s.env_dim},
          {"rho1", to_json(s.rho1)},
          {"rho2", to_json(s.rho2)},
          {"upsilon1", to_json(s.upsilon1)},
          {"upsilon2", to_json(s.upsilon2)},
          {"v", matrix_to_json(s.v)}};
}

inline CloningSetup setup_from_json(const Json& j) {
  CloningSetup s{density_from_json(detail::field(j, "rho1")),
                 density_from_json(detail::field(j, "rho2")),
                 density_from_json(detail::field(j, "upsilon1")),
                 density_from_json(detail::field(j, "upsilon2")),
                 matrix_from_json(detail::field(j, "v")),
                 static_cast<int>(detail::positive_index(j, "N")),
                 static_cast<int>(detail::positive_index(j, "L")),
                 detail::positive_index(j, "env_dim")};
  detail::require_json(detail::positive_index(j, "d") == s.d(), "'d' disagrees with rho1");
  validate(s);
  return s;
}

inline Json to_json(const CloneOutcome& o) {
  return {{"out1", to_json(o.out1)},
          {"out2", to_json(o.out2)},
          {"delta1", o.delta1},
          {"delta2", o.delta2},
          {"absolute_error", o.absolute_error},
          {"relative_error", o.relative_error}};
}

inline CloneOutcome outcome_from_json(const Json& j) {
  auto num = [&](const char* key) {
    const Json& v = detail::field(j, key);
    detail::require_json(v.is_number(), std::string("'") + key + "' must be a number");
    return v.get<double>();
  };
  return {density_from_json(detail::field(j, "out1")),
          density_from_json(detail::field(j, "out2")),
          num("delta1"),
          num("delta2"),
          num("absolute_error"),
          num("relative_error")};
}

inline Json to_json(const InequalityCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

inline Json to_json(const ProofChainReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"f", r.f},           {"phi", r.phi},       {"bound", r.bound},
          {"outcome", to_json(r.outcome)}, {"checks", checks}, {"all_hold", r.all_hold()}};
}

}  // namespace io
}  // namespace clonebound

#endif  // CLONEBOUND_IO_HPP
