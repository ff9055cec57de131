#include "tubestab/json_io.hpp"

#include <cmath>

namespace tubestab {

namespace {

json schema_get(const json& j, const char* key) {
  if (!j.contains(key)) fail(errc::schema_error, std::string("missing field: ") + key);
  return j.at(key);
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const std::size_t rows = schema_get(j, "rows").get<std::size_t>();
  const std::size_t cols = schema_get(j, "cols").get<std::size_t>();
  const auto re = schema_get(j, "re");
  const auto im = schema_get(j, "im");
  if (re.size() != rows * cols || im.size() != rows * cols)
    fail(errc::schema_error, "matrix entry count mismatch");
  std::vector<cplx> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i] = {re[i].get<double>(), im[i].get<double>()};
  return CMatrix(rows, cols, std::move(entries));
}

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(json{{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"schema", kSchemaTag}, {"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly poly_from_json(const json& j) {
  const std::size_t nvars = schema_get(j, "nvars").get<std::size_t>();
  MultiPoly p(nvars);
  for (const auto& t : schema_get(j, "terms")) {
    const auto e = schema_get(t, "exp").get<std::vector<int>>();
    if (e.size() != nvars) fail(errc::schema_error, "term exponent length");
    for (int x : e)
      if (x < 0) fail(errc::schema_error, "negative exponent");
    p.add_term(e, {schema_get(t, "re").get<double>(), schema_get(t, "im").get<double>()});
  }
  return p;
}

json domain_to_json(const DomainSpec& spec) {
  json params{{"dim", spec.dim}};
  if (spec.kind == DomainSpec::Kind::cartan_product) {
    json f = json::array();
    for (const auto& b : spec.factors)
      f.push_back(json{{"symmetric", b.symmetric}, {"size", b.size}});
    params["factors"] = f;
  }
  return json{{"schema", kSchemaTag},
              {"kind", DomainSpec::kind_name(spec.kind)},
              {"params", params}};
}

DomainSpec domain_from_json(const json& j) {
  const std::string kind = schema_get(j, "kind").get<std::string>();
  DomainSpec spec;
  using K = DomainSpec::Kind;
  const K kinds[] = {K::polydisk,   K::halfplane_tube, K::lie_ball,
                     K::lorentz_cone, K::lorentz_tube, K::matrix_uhp,
                     K::siegel_uhp, K::skew_domain,    K::cartan_product,
                     K::bounded_exceptional27, K::exceptional_tube27};
  bool found = false;
  for (K k : kinds)
    if (kind == DomainSpec::kind_name(k)) {
      spec.kind = k;
      found = true;
      break;
    }
  if (!found) fail(errc::schema_error, "unknown domain kind: " + kind);
  const json params = j.contains("params") ? j.at("params") : json::object();
  spec.dim = params.contains("dim") ? params.at("dim").get<int>() : 1;
  if (spec.kind == K::cartan_product) {
    for (const auto& f : schema_get(params, "factors"))
      spec.factors.push_back(
          {schema_get(f, "symmetric").get<bool>(), schema_get(f, "size").get<int>(), 1});
  }
  if (spec.kind == K::bounded_exceptional27 || spec.kind == K::exceptional_tube27) spec.dim = 27;
  return spec;
}

json structure_to_json(const StructureMap& sm) {
  using K = StructureMap::Kind;
  json params;
  std::string kind;
  switch (sm.kind) {
    case K::diagonal_zn:
      kind = "diagonal_zn";
      params["N"] = sm.multiplicities;
      break;
    case K::cartan_blocks: {
      kind = "cartan_blocks";
      json blocks = json::array();
      for (const auto& b : sm.blocks)
        blocks.push_back(
            json{{"symmetric", b.symmetric}, {"size", b.size}, {"mult", b.mult}});
      params["blocks"] = blocks;
      break;
    }
    case K::skew_zj:
      kind = "skew_zj";
      params["n"] = sm.n;
      params["N"] = sm.mult;
      break;
    case K::lorentz_w:
      kind = "lorentz_w";
      params["n"] = sm.n;
      params["k"] = sm.mult;
      break;
    case K::lie_ppm:
      kind = "lie_ppm";
      params["n"] = sm.n;
      params["k"] = sm.mult;
      break;
    case K::exceptional_omega:
      kind = "exceptional_omega";
      params["summand"] = sm.summand;
      break;
  }
  return json{{"kind", kind}, {"params", params}};
}

StructureMap structure_from_json(const json& j) {
  const std::string kind = schema_get(j, "kind").get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (kind == "diagonal_zn")
    return StructureMap::diagonal_zn(schema_get(params, "N").get<std::vector<int>>());
  if (kind == "cartan_blocks") {
    std::vector<StructureMap::Block> blocks;
    for (const auto& b : schema_get(params, "blocks"))
      blocks.push_back({schema_get(b, "symmetric").get<bool>(),
                        schema_get(b, "size").get<int>(), schema_get(b, "mult").get<int>()});
    return StructureMap::cartan(std::move(blocks));
  }
  if (kind == "skew_zj")
    return StructureMap::skew_zj(schema_get(params, "n").get<int>(),
                                 schema_get(params, "N").get<int>());
  if (kind == "lorentz_w")
    return StructureMap::lorentz_w(schema_get(params, "n").get<int>(),
                                   schema_get(params, "k").get<int>());
  if (kind == "lie_ppm")
    return StructureMap::lie_ppm(schema_get(params, "n").get<int>(),
                                 schema_get(params, "k").get<int>());
  if (kind == "exceptional_omega")
    return StructureMap::exceptional_omega(schema_get(params, "summand").get<int>());
  fail(errc::schema_error, "unknown structure kind: " + kind);
}

json detrep_to_json(const DetRep& rep) {
  const char* form = rep.form == DetRep::Form::affine
                         ? "affine"
                         : rep.form == DetRep::Form::disc_contraction ? "disc_contraction"
                                                                      : "lie_pencil";
  json j{{"schema", kSchemaTag},
         {"form", form},
         {"A0", matrix_to_json(rep.a0)},
         {"structure", structure_to_json(rep.structure)},
         {"k", rep.k},
         {"V", rep.isometry ? matrix_to_json(*rep.isometry) : json(nullptr)},
         {"prefactor",
          json{{"c_re", rep.prefactor.c.real()},
               {"c_im", rep.prefactor.c.imag()},
               {"w1_plus_i_pow", rep.prefactor.w1_plus_i_pow}}},
         {"construction", rep.construction},
         {"source_norm", rep.source_norm}};
  return j;
}

DetRep detrep_from_json(const json& j) {
  DetRep rep;
  const std::string form = schema_get(j, "form").get<std::string>();
  if (form == "affine")
    rep.form = DetRep::Form::affine;
  else if (form == "disc_contraction")
    rep.form = DetRep::Form::disc_contraction;
  else if (form == "lie_pencil")
    rep.form = DetRep::Form::lie_pencil;
  else
    fail(errc::schema_error, "unknown representation form: " + form);
  rep.a0 = matrix_from_json(schema_get(j, "A0"));
  rep.structure = structure_from_json(schema_get(j, "structure"));
  rep.k = schema_get(j, "k").get<int>();
  if (j.contains("V") && !j.at("V").is_null()) rep.isometry = matrix_from_json(j.at("V"));
  const json pf = schema_get(j, "prefactor");
  rep.prefactor.c = {schema_get(pf, "c_re").get<double>(), schema_get(pf, "c_im").get<double>()};
  rep.prefactor.w1_plus_i_pow = schema_get(pf, "w1_plus_i_pow").get<int>();
  if (j.contains("construction")) rep.construction = j.at("construction").get<std::string>();
  if (j.contains("source_norm")) rep.source_norm = j.at("source_norm").get<double>();
  return rep;
}

json round_floats(const json& j, int significant) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == 0.0 || !std::isfinite(v)) return v;
    const double mag = std::pow(10.0, significant - 1 - std::floor(std::log10(std::abs(v))));
    return std::round(v * mag) / mag;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_floats(it.value(), significant);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(round_floats(v, significant));
    return out;
  }
  return j;
}

}  // namespace tubestab
