/*
 * Copyright 2026 The pfcurves Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// JSON encoding. Every rational is written as a decimal string "p/q" or "p";
// on input integers are accepted as well.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfcurves/experiments.hpp"
#include "pfcurves/interp.hpp"
#include "pfcurves/matrix.hpp"
#include "pfcurves/quadric.hpp"
#include "pfcurves/rational.hpp"

namespace pfcurves::json {

using Json = nlohmann::ordered_json;

inline Json encode(const Rat& r) { return to_string(r); }

inline Json encode(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json encode(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(encode(v));
  return a;
}

inline Json encode(const MatQ& m) { return encode(m.to_rows()); }

inline Json encode(const SkewMatQ& m) { return encode(m.matrix()); }

inline Json encode(const UniPoly& p) { return encode(p.coefficients()); }

inline Json encode(const MarkedConfig& c) {
  Json j;
  j["z"] = encode(c.z());
  j["points"] = encode(c.points());
  return j;
}

inline Json encode(const QuadSpace& q) {
  Json j;
  j["gram"] = encode(q.gram());
  j["base_point"] = q.base_point() ? encode(*q.base_point()) : Json(nullptr);
  return j;
}

inline Json encode(const CurveMap& c, bool with_config = false) {
  Json j;
  j["degree"] = c.degree();
  j["lambda"] = encode(c.lambda());
  Json comps = Json::array();
  for (const auto& p : c.components()) comps.push_back(encode(p));
  j["components"] = std::move(comps);
  if (with_config) j["config"] = encode(c.config());
  return j;
}

inline Json encode(const GenericityWitness& w) {
  Json j;
  j["vanishing_minors"] = w.vanishing_minors;
  j["zero_coordinates"] = w.zero_coordinates;
  j["base_point_extras"] = w.base_point_extras;
  j["violating_basis"] = w.violating_basis;
  return j;
}

inline Json encode(const PnHypotheses& h) {
  Json j;
  j["degree_bound"] = h.degree_bound;
  j["wedge_rank"] = h.wedge_rank;
  j["imposed_rank"] = h.imposed_rank;
  return j;
}

/// `config` is the configuration the representatives interpolate; it is
/// embedded so the description can be read back.
inline Json encode(const FibreDescription& f, const MarkedConfig& config) {
  Json j;
  j["kind"] = to_string(f.kind);
  j["dim"] = f.dim ? Json(*f.dim) : Json(nullptr);
  j["kernel_dim"] = f.kernel_dim;
  j["nonvanishing_ok"] = f.nonvanishing_ok;
  j["kernel"] = encode(f.kernel);
  Json reps = Json::array();
  for (const auto& c : f.representatives) reps.push_back(encode(c));
  j["representatives"] = std::move(reps);
  j["witness"] = encode(f.witness);
  j["hypotheses"] = f.hypotheses ? encode(*f.hypotheses) : Json(nullptr);
  j["config"] = encode(config);
  return j;
}

inline Json encode(const ProbeWitness& w) {
  Json j;
  j["trial"] = w.trial;
  j["trial_seed"] = w.trial_seed;
  j["config_digest"] = w.config_digest;
  j["rank"] = w.rank;
  j["kernel_dim"] = w.kernel_dim;
  j["label"] = w.label;
  j["expected"] = w.expected;
  j["reason"] = w.reason;
  return j;
}

/// Summary block first, then parameters, then the witness list.
inline Json encode(const ProbeReport& r) {
  Json summary;
  summary["probe"] = r.probe_name;
  summary["conforming"] = r.conforming;
  summary["asserted"] = r.asserted;
  summary["unwitnessed"] = r.unwitnessed;
  summary["histogram"] = r.histogram;
  summary["max_rank"] = r.max_rank ? Json(*r.max_rank) : Json(nullptr);
  summary["rank_bound"] = r.rank_bound ? Json(*r.rank_bound) : Json(nullptr);
  Json params;
  params["n"] = r.n;
  params["d"] = r.d;
  params["trials"] = r.trials;
  params["seed"] = r.seed;
  params["variant"] = r.variant;
  Json wit = Json::array();
  for (const auto& w : r.witnesses) wit.push_back(encode(w));
  Json j;
  j["summary"] = std::move(summary);
  j["parameters"] = std::move(params);
  j["witnesses"] = std::move(wit);
  return j;
}

// ---- decoding ----

inline Rat decode_rat(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rat(mpz_class(std::to_string(j.get<unsigned long long>())))
                                  : Rat(mpz_class(std::to_string(j.get<long long>())));
  }
  throw ParseError("expected a rational as a string or an integer, got " + j.dump());
}

inline Vec decode_vec(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  Vec v;
  for (const auto& x : j) v.push_back(decode_rat(x));
  return v;
}

inline std::vector<Vec> decode_rows(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(decode_vec(r));
  return rows;
}

/// Accepts a bare array of rows or {"matrix": rows}.
inline MatQ decode_matrix(const Json& j) {
  const Json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  const auto r = decode_rows(rows);
  if (r.empty()) return MatQ(0, 0);
  for (const auto& row : r)
    if (row.size() != r.front().size()) throw ParseError("matrix rows have different lengths");
  try {
    return MatQ::from_rows(r);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline MarkedConfig decode_config(const Json& j) {
  if (!j.is_object() || !j.contains("z") || !j.contains("points")) throw ParseError("configuration needs \"z\" and \"points\"");
  try {
    return MarkedConfig(decode_vec(j.at("z")), decode_rows(j.at("points")));
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline QuadSpace decode_quadspace(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) throw ParseError("quadric needs a \"gram\" matrix");
  std::optional<Vec> base;
  if (j.contains("base_point") && !j.at("base_point").is_null()) base = decode_vec(j.at("base_point"));
  try {
    return QuadSpace(decode_matrix(j.at("gram")), std::move(base));
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

/// A curve is stored as its configuration plus lambda; the components are
/// recomputed.
inline CurveMap decode_curve(const Json& j) {
  if (!j.is_object() || !j.contains("config") || !j.contains("lambda")) throw ParseError("curve needs \"config\" and \"lambda\"");
  const MarkedConfig cfg = decode_config(j.at("config"));
  try {
    return interpolate_pn(cfg, decode_vec(j.at("lambda")));
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::vector<std::size_t> decode_indices(const Json& j) { return j.get<std::vector<std::size_t>>(); }

inline FibreDescription decode_fibre(const Json& j) {
  FibreDescription f;
  f.kind = parse_fibre_kind(j.at("kind").get<std::string>());
  if (!j.at("dim").is_null()) f.dim = j.at("dim").get<std::size_t>();
  f.kernel_dim = j.at("kernel_dim").get<std::size_t>();
  f.nonvanishing_ok = j.at("nonvanishing_ok").get<bool>();
  f.kernel = decode_rows(j.at("kernel"));
  const MarkedConfig cfg = decode_config(j.at("config"));
  for (const auto& r : j.at("representatives")) f.representatives.push_back(interpolate_pn(cfg, decode_vec(r.at("lambda"))));
  const Json& w = j.at("witness");
  f.witness.vanishing_minors = w.at("vanishing_minors").get<std::vector<std::vector<std::size_t>>>();
  f.witness.zero_coordinates = decode_indices(w.at("zero_coordinates"));
  f.witness.base_point_extras = decode_indices(w.at("base_point_extras"));
  f.witness.violating_basis = decode_indices(w.at("violating_basis"));
  if (!j.at("hypotheses").is_null()) {
    const Json& h = j.at("hypotheses");
    f.hypotheses = PnHypotheses{h.at("degree_bound").get<bool>(), h.at("wedge_rank").get<bool>(),
                                h.at("imposed_rank").get<std::size_t>()};
  }
  return f;
}

inline ProbeReport decode_report(const Json& j) {
  ProbeReport r;
  const Json& s = j.at("summary");
  const Json& p = j.at("parameters");
  r.probe_name = s.at("probe").get<std::string>();
  r.conforming = s.at("conforming").get<bool>();
  r.asserted = s.at("asserted").get<bool>();
  r.unwitnessed = s.at("unwitnessed").get<std::size_t>();
  r.histogram = s.at("histogram").get<std::map<std::string, std::size_t>>();
  if (!s.at("max_rank").is_null()) r.max_rank = s.at("max_rank").get<std::size_t>();
  if (!s.at("rank_bound").is_null()) r.rank_bound = s.at("rank_bound").get<std::size_t>();
  r.n = p.at("n").get<std::size_t>();
  r.d = p.at("d").get<std::size_t>();
  r.trials = p.at("trials").get<std::size_t>();
  r.seed = p.at("seed").get<std::uint64_t>();
  r.variant = p.at("variant").get<std::string>();
  for (const auto& w : j.at("witnesses")) {
    r.witnesses.push_back({w.at("trial").get<std::size_t>(), w.at("trial_seed").get<std::uint64_t>(),
                           w.at("config_digest").get<std::string>(), w.at("rank").get<std::size_t>(),
                           w.at("kernel_dim").get<std::size_t>(), w.at("label").get<std::string>(),
                           w.at("expected").get<std::string>(), w.at("reason").get<std::string>()});
  }
  return r;
}

}  // namespace pfcurves::json
