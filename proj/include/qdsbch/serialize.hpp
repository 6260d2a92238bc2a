// Copyright 2026 The qdsbch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDSBCH_SERIALIZE_HPP
#define QDSBCH_SERIALIZE_HPP

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdsbch/bch.hpp"
#include "qdsbch/fields.hpp"
#include "qdsbch/linalg.hpp"
#include "qdsbch/qds.hpp"
#include "qdsbch/sim.hpp"

namespace qdsbch {

using json = nlohmann::json;

inline json to_json(const FiniteField& f) {
  return {{"m", f.m()}, {"primitive_polynomial", f.primitive_polynomial().to_hex()}};
}

inline FiniteField field_from_json(const json& j) {
  return FiniteField(j.at("m").get<int>(), FieldPolynomial::from_hex(j.at("primitive_polynomial").get<std::string>()));
}

inline json to_json(const BchCode& c) {
  return {{"m", c.m()},
          {"t", c.t()},
          {"a", c.shorten_by()},
          {"primitive_polynomial", c.field().primitive_polynomial().to_hex()}};
}

inline BchCode bch_from_json(const json& j) {
  auto field = std::make_shared<const FiniteField>(field_from_json(j));
  return BchCode::construct(std::move(field), j.at("t").get<std::size_t>()).shortened(j.at("a").get<std::size_t>());
}

inline json to_json(const BinaryMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).to_string());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

inline BinaryMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != rows) throw std::invalid_argument("matrix json: row count mismatch");
  std::vector<BitVector> out;
  for (const auto& r : data) {
    const auto s = r.get<std::string>();
    if (s.size() != cols) throw std::invalid_argument("matrix json: ragged row");
    out.push_back(BitVector::from_string(s));
  }
  return BinaryMatrix::from_rows(std::move(out), cols);
}

inline json to_json(const CodeMeta& m) {
  return {{"code", m.code}, {"sm", m.sm}, {"n", m.n}, {"k", m.k}, {"d", m.d}, {"ell", m.ell},
          {"n_s", m.n_s}, {"t_q", m.t_q}, {"t_s", m.t_s}, {"extra", m.extra}};
}

inline CodeMeta code_meta_from_json(const json& j) {
  CodeMeta m;
  m.code = j.at("code").get<std::string>();
  m.sm = j.at("sm").get<std::string>();
  m.n = j.at("n").get<std::size_t>();
  m.k = j.at("k").get<std::size_t>();
  m.d = j.at("d").get<std::size_t>();
  m.ell = j.at("ell").get<std::size_t>();
  m.n_s = j.at("n_s").get<std::size_t>();
  m.t_q = j.at("t_q").get<std::size_t>();
  m.t_s = j.at("t_s").get<std::size_t>();
  m.extra = j.at("extra").get<std::size_t>();
  return m;
}

inline json to_json(const SimGrid& g) {
  json cells = json::array();
  for (const auto& [key, c] : g.cells) {
    cells.push_back({{"wq", key.first}, {"ws", key.second}, {"trials", c.trials}, {"failures", c.failures}});
  }
  return {{"code_meta", to_json(g.meta)}, {"seed", g.seed}, {"cells", cells}};
}

inline SimGrid grid_from_json(const json& j) {
  SimGrid g;
  g.meta = code_meta_from_json(j.at("code_meta"));
  g.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("cells")) {
    CellResult r{c.at("trials").get<std::uint64_t>(), c.at("failures").get<std::uint64_t>()};
    if (r.failures > r.trials) throw std::invalid_argument("grid json: failures exceed trials");
    const auto wq = c.at("wq").get<std::size_t>();
    const auto ws = c.at("ws").get<std::size_t>();
    if (wq > g.meta.n || ws > g.meta.n_s) throw std::invalid_argument("grid json: cell weight out of range");
    g.cells[{wq, ws}] = r;
  }
  return g;
}

/// Shortest round-trippable decimal form.
inline std::string format_double(double v) {
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

inline void write_overhead_csv(std::ostream& os, const std::vector<OverheadRow>& rows) {
  os << "ell,t,bch,fujiwara,repetition\n";
  for (const auto& r : rows) {
    os << r.ell << ',' << r.t << ',' << (r.bch ? std::to_string(*r.bch) : "NA") << ','
       << (r.fujiwara ? std::to_string(*r.fujiwara) : "NA") << ',' << r.repetition << '\n';
  }
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
  os << "p_s,p_q,p_err,truncation_mass\n";
  for (const auto& pt : curve) {
    os << format_double(pt.p_s) << ',' << format_double(pt.p_q) << ',' << format_double(pt.estimate.p_err) << ','
       << format_double(pt.estimate.truncation_mass) << '\n';
  }
}

}  // namespace qdsbch

#endif  // QDSBCH_SERIALIZE_HPP
