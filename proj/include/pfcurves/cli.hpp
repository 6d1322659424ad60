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

// Command-line front end. Every subcommand prints one JSON document on
// stdout. Exit codes: 0 success, 1 usage or input error, 2 verification
// failure, 3 non-conforming probe.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pfcurves/experiments.hpp"
#include "pfcurves/interp.hpp"
#include "pfcurves/json_io.hpp"
#include "pfcurves/matrix.hpp"
#include "pfcurves/moduli.hpp"
#include "pfcurves/pfaffian.hpp"
#include "pfcurves/quadric.hpp"
#include "pfcurves/quadric_fibre.hpp"

namespace pfcurves::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kNonConforming = 3 };

namespace detail {

using json::Json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline Vec parse_csv(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(item);
  return parse_vec(items);
}

/// "split:n" for the split quadric Q_n, otherwise a JSON file.
inline QuadSpace load_quadric(const std::string& spec) {
  if (spec.rfind("split:", 0) == 0) {
    const std::string tail = spec.substr(6);
    std::size_t used = 0;
    long n = -1;
    try {
      n = std::stol(tail, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != tail.size() || n < 0) throw ParseError("bad quadric spec '" + spec + "'");
    return QuadSpace::split_quadric(static_cast<std::size_t>(n));
  }
  return json::decode_quadspace(read_json_file(spec));
}

inline SamplerOptions sampler_options() {
  SamplerOptions opts;
  if (const char* env = std::getenv("PFCURVES_MAX_ATTEMPTS")) {
    const std::string s(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || v == 0) throw ParseError("PFCURVES_MAX_ATTEMPTS must be a positive integer");
    opts.max_attempts = static_cast<std::size_t>(v);
  }
  return opts;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::Json;
  CLI::App app{"Exact interpolation of rational curves through marked points", "pfcurves"};
  app.require_subcommand(1);

  std::function<int()> action;
  auto emit = [&out](const Json& j) { out << j.dump(2) << '\n'; };

  std::string matrix_path, config_path, extra_path, quadric_spec, curve_path, lambda_text, z_text;

  auto* pf = app.add_subcommand("pfaffian", "Pfaffian of a skew-symmetric matrix");
  pf->add_option("--matrix", matrix_path, "JSON matrix file")->required();
  pf->callback([&] {
    action = [&] {
      emit(Json{{"pfaffian", to_string(pfaffian(json::decode_matrix(detail::read_json_file(matrix_path))))}});
      return kOk;
    };
  });

  auto* ker = app.add_subcommand("kernel", "Kernel of a matrix, with the Pfaffian-minor formula when it applies");
  ker->add_option("--matrix", matrix_path, "JSON matrix file")->required();
  ker->callback([&] {
    action = [&] {
      const MatQ m = json::decode_matrix(detail::read_json_file(matrix_path));
      const auto basis = kernel_basis(m);
      Json j;
      j["rows"] = m.rows();
      j["cols"] = m.cols();
      j["rank"] = rank(m);
      j["kernel"] = json::encode(basis);
      j["pfaffian_kernel"] = nullptr;
      if (m.is_skew()) {
        try {
          const auto pk = kernel_via_pfaffians(SkewMatQ(m));
          j["pfaffian_kernel"] = Json{{"spanning", json::encode(pk.spanning)}, {"basis", json::encode(pk.basis)}};
        } catch (const RankPreconditionError& e) {
          j["pfaffian_kernel_error"] = e.what();
        }
      }
      emit(j);
      return kOk;
    };
  });

  auto* ipn = app.add_subcommand("interp-pn", "Curve through a configuration for given lambda");
  ipn->add_option("--config", config_path, "JSON configuration")->required();
  ipn->add_option("--lambda", lambda_text, "comma separated rationals")->required();
  ipn->callback([&] {
    action = [&] {
      const MarkedConfig cfg = json::decode_config(detail::read_json_file(config_path));
      emit(json::encode(interpolate_pn(cfg, detail::parse_csv(lambda_text)), true));
      return kOk;
    };
  });

  auto* fpn = app.add_subcommand("fibre-pn", "Curves in P^n through base points and extra marked points");
  fpn->add_option("--config", config_path, "JSON configuration of the d+1 base points")->required();
  fpn->add_option("--extra", extra_path, "JSON configuration of extra marked points");
  fpn->callback([&] {
    action = [&] {
      const MarkedConfig base = json::decode_config(detail::read_json_file(config_path));
      const MarkedConfig extra = extra_path.empty() ? MarkedConfig{} : json::decode_config(detail::read_json_file(extra_path));
      if (base.size() == 0) throw ParseError("configuration has no points");
      emit(json::encode(pn_fibre(base, extra, base.ambient_dim() - 1), base));
      return kOk;
    };
  });

  auto* bsk = app.add_subcommand("build-skew", "Rescaled skew matrix of a configuration on a quadric");
  bsk->add_option("--quadric", quadric_spec, "split:n or a JSON file")->required();
  bsk->add_option("--config", config_path, "JSON configuration")->required();
  bsk->callback([&] {
    action = [&] {
      const QuadSpace q = detail::load_quadric(quadric_spec);
      const MarkedConfig cfg = json::decode_config(detail::read_json_file(config_path));
      emit(Json{{"matrix", json::encode(build_rescaled_skew(q, cfg).matrix)}});
      return kOk;
    };
  });

  auto* fq = app.add_subcommand("fibre-quadric", "Curves on a quadric through marked points");
  fq->add_option("--quadric", quadric_spec, "split:n or a JSON file")->required();
  fq->add_option("--config", config_path, "JSON configuration")->required();
  fq->callback([&] {
    action = [&] {
      const QuadSpace q = detail::load_quadric(quadric_spec);
      const MarkedConfig cfg = json::decode_config(detail::read_json_file(config_path));
      emit(json::encode(solve_quadric_fibre(q, cfg), cfg));
      return kOk;
    };
  });

  auto* vc = app.add_subcommand("verify-curve", "Check that a curve lies on a quadric");
  vc->add_option("--quadric", quadric_spec, "split:n or a JSON file")->required();
  vc->add_option("--curve", curve_path, "JSON curve with config and lambda")->required();
  vc->callback([&] {
    action = [&] {
      const QuadSpace q = detail::load_quadric(quadric_spec);
      const CurveMap c = json::decode_curve(detail::read_json_file(curve_path));
      const UniPoly pull = quadric_pullback(q, c);
      emit(Json{{"on_quadric", pull.is_zero()}, {"pullback", json::encode(pull)}});
      return pull.is_zero() ? kOk : kVerifyFailed;
    };
  });

  auto* cpf = app.add_subcommand("cauchy-pf", "Closed-form Pfaffian of the alternating configuration");
  cpf->add_option("--z", z_text, "comma separated distinct rationals, even count")->required();
  cpf->callback([&] {
    action = [&] {
      const Vec z = detail::parse_csv(z_text);
      const Rat closed = cauchy_pfaffian(z);
      const Rat direct = pfaffian(build_rescaled_skew(QuadSpace::split(2), alternating_config(z, 2)).matrix);
      emit(Json{{"cauchy_pfaffian", to_string(closed)}, {"pfaffian", to_string(direct)}, {"agree", closed == direct}});
      return closed == direct ? kOk : kVerifyFailed;
    };
  });

  std::int64_t dim_x = 0, mkb = 0, marks = 0;
  auto* ed = app.add_subcommand("expected-dim", "Expected dimension of the space of marked rational curves");
  ed->add_option("--dim", dim_x, "dimension of X")->required();
  ed->add_option("--minus-k-beta", mkb, "-K_X . beta")->required();
  ed->add_option("--m", marks, "number of markings")->required();
  ed->callback([&] {
    action = [&] {
      emit(Json{{"expected_dim", expected_dim(dim_x, mkb, marks)}});
      return kOk;
    };
  });

  std::string kind_text;
  std::int64_t n_val = 0, m_val = 0, d_val = 0, g_val = 0;
  auto* bnd = app.add_subcommand("bounds", "Bounds on the minimal m-connecting degree");
  bnd->add_option("--kind", kind_text, "pn or qn")->required()->check(CLI::IsMember({"pn", "qn"}));
  bnd->add_option("--n", n_val, "dimension")->required();
  bnd->add_option("--m", m_val, "number of points")->required();
  bnd->callback([&] {
    action = [&] {
      const auto b = covering_bounds(kind_text == "pn" ? CoveringKind::ProjectiveSpace : CoveringKind::Quadric, n_val, m_val);
      emit(Json{{"lower", b.lower}, {"upper", b.upper}});
      return kOk;
    };
  });

  auto* bis = app.add_subcommand("bisecants", "Bisecant lines of a curve in V5");
  bis->add_option("--d", d_val, "degree")->required();
  bis->add_option("--g", g_val, "genus")->required();
  bis->callback([&] {
    action = [&] {
      emit(Json{{"bisecants", bisecant_count(d_val, g_val)}});
      return kOk;
    };
  });

  std::string class_text, other_text;
  std::int64_t delta_val = 0;
  auto* dp = app.add_subcommand("dp", "Del Pezzo lattice computations");
  dp->require_subcommand(1);
  auto* dp_cone = dp->add_subcommand("cone", "Nef/ample position of a class");
  dp_cone->add_option("--class", class_text, "delta:a:b1,b2,...")->required();
  dp_cone->callback([&] {
    action = [&] {
      const DPClass c = DPClass::parse(class_text);
      emit(Json{{"class", c.str()}, {"position", to_string(dp_cone_position(c))}});
      return kOk;
    };
  });
  auto* dp_pair_cmd = dp->add_subcommand("pair", "Intersection number of two classes");
  dp_pair_cmd->add_option("--class", class_text, "delta:a:b1,b2,...")->required();
  dp_pair_cmd->add_option("--with", other_text, "delta:a:b1,b2,...")->required();
  dp_pair_cmd->callback([&] {
    action = [&] {
      emit(Json{{"pairing", to_string(dp_pair(DPClass::parse(class_text), DPClass::parse(other_text)))}});
      return kOk;
    };
  });
  auto* dp_red = dp->add_subcommand("reduce", "Marked-point count after pushing down to the plane");
  dp_red->add_option("--class", class_text, "delta:a:b1,b2,...")->required();
  dp_red->add_option("--d", d_val, "multiple of the class")->required();
  dp_red->add_option("--m", m_val, "number of markings")->required();
  dp_red->callback([&] {
    action = [&] {
      const auto r = dp_reduce_to_p2(DPClass::parse(class_text), d_val, m_val);
      emit(Json{{"p2_degree", r.p2_degree}, {"total_marks", r.total_marks}, {"base_points", r.base_points}});
      return kOk;
    };
  });
  auto* dp_qt = dp->add_subcommand("quintic-table", "Pairings of alpha - K with the ten lines of the degree-5 surface");
  dp_qt->add_option("--root", class_text, "5:a:b1,b2,b3,b4")->required();
  dp_qt->callback([&] {
    action = [&] {
      const DPClass alpha = DPClass::parse(class_text);
      const auto values = dp5_quintic_table(alpha);
      const DPClass c = alpha - DPClass::canonical(5);
      Json counts = Json::object();
      for (const auto& [v, k] : multiset_counts(values)) counts[std::to_string(v)] = k;
      Json vals = Json::array();
      for (const auto& v : values) vals.push_back(to_string(v));
      emit(Json{{"curve", c.str()},
                {"pairings", vals},
                {"counts", counts},
                {"anticanonical_degree", to_string(dp_pair(c, DPClass::anticanonical(5)))},
                {"genus", to_string(dp_genus(c))}});
      return kOk;
    };
  });
  auto* dp_md = dp->add_subcommand("md", "Number of points m_d");
  dp_md->add_option("--delta", delta_val, "degree of the surface")->required();
  dp_md->add_option("--d", d_val, "degree")->required();
  dp_md->callback([&] {
    action = [&] {
      emit(Json{{"m_d", dp_m_d(delta_val, d_val)}});
      return kOk;
    };
  });
  auto* dp_t = dp->add_subcommand("t2009", "Check 3a >= 2b");
  dp_t->add_option("--class", class_text, "delta:a:b1,b2,...")->required();
  dp_t->callback([&] {
    action = [&] {
      emit(Json{{"holds", dp_t2009_condition(DPClass::parse(class_text))}});
      return kOk;
    };
  });

  std::size_t trials = 50, probe_n = 3, probe_d = 0;
  std::uint64_t seed = 0;
  std::string out_path, curve_text = "quartic", variant_text = "component";
  auto* probe = app.add_subcommand("probe", "Seeded randomized probes");
  probe->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--d", probe_d, "degree")->required();
    sub->add_option("--trials", trials, "number of trials")->capture_default_str();
    sub->add_option("--seed", seed, "master seed")->capture_default_str();
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };
  auto finish_probe = [&](const ProbeReport& r) {
    const Json j = json::encode(r);
    if (out_path.empty()) {
      emit(j);
    } else {
      std::ofstream f(out_path);
      if (!f) throw ParseError("cannot write '" + out_path + "'");
      f << j.dump(2) << '\n';
      emit(j.at("summary"));
    }
    return r.conforming ? kOk : kNonConforming;
  };
  auto* pgf = probe->add_subcommand("general-fibre", "Parity law on split Q_n");
  pgf->add_option("--n", probe_n, "quadric dimension")->capture_default_str();
  add_common(pgf);
  pgf->callback([&] {
    action = [&] { return finish_probe(probe_general_fibre(probe_n, probe_d, trials, seed, detail::sampler_options())); };
  });
  auto* prc = probe->add_subcommand("rank-on-curve", "Rank of the rescaled matrix along a rational curve of Q3");
  add_common(prc);
  prc->add_option("--curve", curve_text, "quartic or cubic")->capture_default_str();
  prc->callback([&] {
    action = [&] {
      return finish_probe(probe_rank_on_curve(probe_d, trials, seed, parse_rank_curve(curve_text), detail::sampler_options()));
    };
  });
  auto* pv5 = probe->add_subcommand("v5-fibre", "Fibres over configurations on a twisted cubic of Q3");
  add_common(pv5);
  pv5->add_option("--variant", variant_text, "component or connecting")->capture_default_str();
  pv5->callback([&] {
    action = [&] {
      return finish_probe(probe_v5_fibre(probe_d, trials, seed, parse_v5_variant(variant_text), detail::sampler_options()));
    };
  });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("pfcurves");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    return kUsage;
  }

  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace pfcurves::cli
