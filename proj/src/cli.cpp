#include "tubestab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "tubestab/json_io.hpp"
#include "tubestab/stability.hpp"
#include "tubestab/suites.hpp"

namespace tubestab {

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::schema_error, "cannot open file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(errc::schema_error, std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::schema_error, "cannot open output file: " + path);
  out << round_floats(j).dump(2) << "\n";
}

json point_to_json(std::span<const cplx> z) {
  json re = json::array(), im = json::array();
  for (const auto& x : z) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  return json{{"re", re}, {"im", im}};
}

std::vector<cplx> point_from_json(const json& j) {
  if (!j.contains("re") || !j.contains("im")) fail(errc::schema_error, "point needs re/im");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) fail(errc::schema_error, "point re/im length mismatch");
  std::vector<cplx> z(re.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {re[i], im[i]};
  return z;
}

std::uint64_t env_seed_fallback(std::uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("TUBESTAB_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

json verification_to_json(const RepVerification& rv) {
  json checks = json::array();
  for (const auto& c : rv.structure_checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"value", c.value}});
  return json{{"schema", kSchemaTag},
              {"identity_max_rel_err", rv.identity_max_rel_err},
              {"a0_im_min_eig", rv.a0_im_min_eig},
              {"structure_checks", checks},
              {"samples", rv.samples_used},
              {"verdict", rv.verdict ? "pass" : "fail"}};
}

json suite_to_json(const SuiteResult& s) {
  json checks = json::array();
  for (const auto& c : s.checks)
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"tol", c.tol},
                          {"samples", c.samples}});
  return json{{"name", s.name}, {"pass", s.pass}, {"checks", checks}};
}

struct GenSpec {
  std::string structure = "halfplane";
  std::vector<int> mults{2, 2};
  int n = 3, k = 1, dims = 2;
  double norm = 0.75;
  std::string blocks = "u2x1";
  std::string k_file;
};

std::vector<StructureMap::Block> parse_blocks(const std::string& s) {
  // comma list of u<size>x<mult> / s<size>x<mult>
  std::vector<StructureMap::Block> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string tok = s.substr(pos, comma - pos);
    pos = comma + 1;
    if (tok.size() < 4 || (tok[0] != 'u' && tok[0] != 's'))
      fail(errc::schema_error, "bad block token: " + tok);
    const std::size_t x = tok.find('x');
    if (x == std::string::npos) fail(errc::schema_error, "bad block token: " + tok);
    StructureMap::Block b;
    b.symmetric = tok[0] == 's';
    b.size = std::stoi(tok.substr(1, x - 1));
    b.mult = std::stoi(tok.substr(x + 1));
    out.push_back(b);
  }
  if (out.empty()) fail(errc::schema_error, "empty block list");
  return out;
}

BuiltRep run_gen(const GenSpec& g, std::uint64_t seed) {
  Rng rng(seed);
  auto contraction = [&](std::size_t dim) {
    if (!g.k_file.empty()) {
      CMatrix k = matrix_from_json(read_json_file(g.k_file));
      require(k.square() && k.rows() == dim, errc::dim_mismatch,
              "supplied K has the wrong size");
      return k;
    }
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = rng.cnormal();
    const double s = op_norm(m);
    return m * cplx(g.norm / (s > 0 ? s : 1.0));
  };

  if (g.structure == "halfplane")
    return cayley_push_halfplane(contraction(StructureMap::diagonal_zn(g.mults).dim()), g.mults);
  if (g.structure == "polydisk")
    return polydisk_rep_from_contraction(contraction(StructureMap::diagonal_zn(g.mults).dim()),
                                         g.mults);
  if (g.structure == "lorentz2")
    return lorentz2_rep_from_contraction(contraction(static_cast<std::size_t>(2 * g.k)));
  if (g.structure == "lorentzn")
    return lorentzn_rep_from_contraction(
        contraction(static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.k)), g.n, g.k);
  if (g.structure == "skew")
    return skew_rep_from_contraction(
        contraction(static_cast<std::size_t>(2 * g.n) * static_cast<std::size_t>(g.k)), g.n,
        g.k);
  if (g.structure == "lieball")
    return lieball_rep_from_contraction(
        contraction(static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.k)), g.n, g.k);
  if (g.structure == "cartan") {
    auto blocks = parse_blocks(g.blocks);
    const auto sm = StructureMap::cartan(blocks);
    const CMatrix k = contraction(sm.dim());
    BuiltRep b;
    b.rep.form = DetRep::Form::affine;
    b.rep.a0 = matrix_cayley(k);
    b.rep.structure = sm;
    b.rep.k = 1;
    b.rep.construction = "cartan_push";
    b.rep.source_norm = op_norm(k);
    b.a0_im_min_eig = min_eig_herm(imag_part(b.rep.a0));
    b.poly = extract_polynomial(b.rep);
    b.extracted = true;
    return b;
  }
  fail(errc::schema_error, "unknown structure: " + g.structure);
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"determinantal representations of strictly stable polynomials on tube domains"};
  app.set_version_flag("--version", kToolVersion);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t seed = 1;
  int threads = 0;
  bool seed_given = false;
  app.add_flag("--serial", "run sample sweeps on the serial reference path");
  app.add_option("--seed", seed, "global RNG seed (env TUBESTAB_SEED as fallback)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");

  // gen
  auto* gen = app.add_subcommand("gen", "construct a certified representation");
  GenSpec gspec;
  std::string gen_out, gen_poly;
  gen->add_option("--structure", gspec.structure,
                  "halfplane|polydisk|lorentz2|lorentzn|skew|lieball|cartan")
      ->required();
  gen->add_option("--N", gspec.mults, "multiplicities for halfplane/polydisk")->delimiter(',');
  gen->add_option("--dims", gspec.dims, "variable count (diagonal structures)");
  gen->add_option("--n", gspec.n, "cone dimension (lorentzn/lieball) or half-size (skew)");
  gen->add_option("--k", gspec.k, "tensor multiplicity");
  gen->add_option("--norm", gspec.norm, "target operator norm of the random contraction");
  gen->add_option("--blocks", gspec.blocks, "cartan blocks, e.g. u2x1,s2x2");
  gen->add_option("--K", gspec.k_file, "JSON file with an explicit contraction");
  gen->add_option("--out", gen_out, "output representation file")->required();
  gen->add_option("--poly", gen_poly, "also write the extracted polynomial");

  // extract
  auto* extract = app.add_subcommand("extract", "interpolate the represented polynomial");
  std::string ex_rep, ex_out;
  extract->add_option("--rep", ex_rep, "representation file")->required();
  extract->add_option("--out", ex_out, "output polynomial file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "verify a claimed representation");
  std::string v_p, v_q, v_rep;
  std::size_t v_samples = 512;
  verify->add_option("--p", v_p, "polynomial file")->required();
  verify->add_option("--q", v_q, "cofactor polynomial file (default: constant 1)");
  verify->add_option("--rep", v_rep, "representation file")->required();
  verify->add_option("--samples", v_samples, "identity sample count");

  // stab
  auto* stab = app.add_subcommand("stab", "sampled stability test");
  std::string s_p, s_domain, s_kind;
  int s_dims = 1;
  std::size_t s_samples = 2000;
  stab->add_option("--p", s_p, "polynomial file")->required();
  stab->add_option("--domain", s_domain, "domain spec file");
  stab->add_option("--kind", s_kind, "inline domain kind (alternative to --domain)");
  stab->add_option("--dims", s_dims, "inline domain dimension");
  stab->add_option("--samples", s_samples, "interior sample count");

  // transform
  auto* transform = app.add_subcommand("transform", "apply a Cayley-type map");
  std::string t_map, t_in, t_out;
  transform->add_option("--map", t_map,
                        "phi|phi_inv|Phi_n|Phi_n_inv|psi|psi_inv|cayley|cayley_inv")
      ->required();
  transform->add_option("--in", t_in, "input point/matrix file")->required();
  transform->add_option("--out", t_out, "output file");

  // suite
  auto* suite = app.add_subcommand("suite", "run an identity suite");
  std::string suite_name;
  std::size_t suite_samples = 0;
  suite->add_option("name", suite_name, "clifford|t27|lieball|roundtrips|proofchains|all")
      ->required();
  suite->add_option("--samples", suite_samples, "override per-check sample counts");

  app.require_subcommand(1);

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargs;
    cargs.push_back("tubestab");
    for (const auto& a : argv) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  seed = env_seed_fallback(seed, seed_given);
  set_thread_count(threads);
  const Exec exec = app.count("--serial") ? Exec::serial : Exec::parallel;
  const auto t0 = std::chrono::steady_clock::now();

  json result;
  int code = 0;
  std::string command;
  try {
    if (*gen) {
      command = "gen";
      if (gen->count("--dims") && !gen->count("--N"))
        gspec.mults.assign(static_cast<std::size_t>(gspec.dims), 2);
      BuiltRep b = run_gen(gspec, seed);
      write_json_file(gen_out, detrep_to_json(b.rep));
      if (!gen_poly.empty()) {
        require(b.extracted, errc::degree_too_small,
                "polynomial extraction exceeded the grid budget for this size");
        write_json_file(gen_poly, poly_to_json(b.poly));
      }
      result = json{{"schema", kSchemaTag},
                    {"command", "gen"},
                    {"structure", gspec.structure},
                    {"rep_file", gen_out},
                    {"poly_file", gen_poly},
                    {"extracted", b.extracted},
                    {"a0_im_min_eig", b.a0_im_min_eig},
                    {"source_norm", b.rep.source_norm}};
    } else if (*extract) {
      command = "extract";
      const DetRep rep = detrep_from_json(read_json_file(ex_rep));
      const MultiPoly poly = extract_polynomial(rep, 300000, exec);
      write_json_file(ex_out, poly_to_json(poly));
      result = json{{"schema", kSchemaTag},
                    {"command", "extract"},
                    {"out", ex_out},
                    {"terms", poly.term_count()},
                    {"total_degree", poly.total_degree()}};
    } else if (*verify) {
      command = "verify";
      const MultiPoly p = poly_from_json(read_json_file(v_p));
      const DetRep rep = detrep_from_json(read_json_file(v_rep));
      const MultiPoly q = v_q.empty() ? MultiPoly::constant(p.nvars(), 1.0)
                                      : poly_from_json(read_json_file(v_q));
      VerifyOptions vo;
      vo.samples = v_samples;
      vo.seed = seed;
      vo.exec = exec;
      const RepVerification rv = verify_rep(p, q, rep, vo);
      result = verification_to_json(rv);
      result["command"] = "verify";
      code = rv.verdict ? 0 : 1;
    } else if (*stab) {
      command = "stab";
      const MultiPoly p = poly_from_json(read_json_file(s_p));
      DomainSpec spec;
      if (!s_domain.empty()) {
        spec = domain_from_json(read_json_file(s_domain));
      } else if (!s_kind.empty()) {
        spec = domain_from_json(json{{"kind", s_kind}, {"params", {{"dim", s_dims}}}});
      } else {
        fail(errc::schema_error, "stab needs --domain or --kind");
      }
      StabilityOptions so;
      so.interior_samples = s_samples;
      so.boundary_samples = s_samples / 10 + 1;
      so.exec = exec;
      const StabilityReport rep = sampled_stability(p, spec, seed, so);
      const bool falsified = rep.verdict == StabilityReport::Verdict::falsified;
      result = json{{"schema", kSchemaTag},
                    {"command", "stab"},
                    {"verdict", falsified ? "falsified" : "no_zero_found"},
                    {"min_abs_over_samples", rep.min_abs_over_samples},
                    {"samples", rep.samples_used},
                    {"seed", rep.seed}};
      if (falsified) {
        result["witness"] = point_to_json(rep.witness);
        result["witness_abs"] = rep.witness_abs;
        result["witness_margin"] = rep.witness_margin;
      }
      code = falsified ? 1 : 0;
    } else if (*transform) {
      command = "transform";
      const json in = read_json_file(t_in);
      json payload;
      if (t_map == "cayley" || t_map == "cayley_inv" || t_map == "psi" || t_map == "psi_inv") {
        const CMatrix m = matrix_from_json(in);
        CMatrix r;
        if (t_map == "cayley") r = matrix_cayley(m);
        else if (t_map == "cayley_inv") r = matrix_cayley_inv(m);
        else if (t_map == "psi") r = psi(m);
        else r = psi_inv(m);
        payload = matrix_to_json(r);
      } else if (t_map == "phi" || t_map == "phi_inv") {
        const auto z = point_from_json(in);
        std::vector<cplx> r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
          r[i] = t_map == "phi" ? phi(z[i]) : phi_inv(z[i]);
        payload = point_to_json(r);
      } else if (t_map == "Phi_n" || t_map == "Phi_n_inv") {
        const auto z = point_from_json(in);
        payload = point_to_json(t_map == "Phi_n" ? Phi_n(z) : Phi_n_inv(z));
      } else {
        fail(errc::schema_error, "unknown map: " + t_map);
      }
      if (!t_out.empty()) write_json_file(t_out, payload);
      result = json{{"schema", kSchemaTag}, {"command", "transform"}, {"map", t_map},
                    {"result", payload}};
    } else if (*suite) {
      command = "suite";
      SuiteConfig cfg;
      cfg.seed = seed;
      cfg.exec = exec;
      if (suite_samples) {
        cfg.t27_samples = suite_samples;
        cfg.lieball_samples = suite_samples;
        cfg.roundtrip_samples = suite_samples;
        cfg.chain_points = suite_samples;
      }
      const auto results = run_suites(suite_name, cfg);
      json arr = json::array();
      bool pass = true;
      for (const auto& s : results) {
        arr.push_back(suite_to_json(s));
        pass = pass && s.pass;
      }
      result = json{{"schema", kSchemaTag},
                    {"command", "suite"},
                    {"suites", arr},
                    {"pass", pass}};
      code = pass ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    result = json{{"schema", kSchemaTag}, {"command", command}, {"error", e.what()}};
    out << round_floats(result).dump(2) << "\n";
    return e.code() == errc::schema_error || e.code() == errc::unknown_suite ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << round_floats(result).dump(2) << "\n";

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const json manifest{{"schema", kSchemaTag},
                      {"manifest", true},
                      {"tool_version", kToolVersion},
                      {"command", command},
                      {"seed", seed},
                      {"threads", threads},
                      {"tolerances",
                       json{{"id_tol", 1e-8},
                            {"margin_tol", kMarginTol},
                            {"eig_residual", NumTol{}.eig_residual},
                            {"cond_cap", NumTol{}.cond_cap}}},
                      {"wall_ms", wall_ms},
                      {"exit", code}};
  err << manifest.dump() << "\n";
  return code;
}

}  // namespace tubestab
