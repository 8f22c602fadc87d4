#include "brs/serialize.hpp"

#include <fstream>
#include <json.hpp>

#include "brs/errors.hpp"

namespace brs {

namespace {

using nlohmann::json;

json int_to_json(const Int& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw ConfigError("expected integer (number or decimal string)");
}

json real_to_json(const Real& x) { return json(x.to_string()); }

}  // namespace

std::string basis_to_json(const SpecialBasis& basis) {
  json j;
  j["s"] = basis.s();
  j["alpha"] = basis.ctx.alpha_decimals();
  json vectors = json::array();
  for (const LatticeVector& v : basis.v) {
    json row = json::array();
    for (const Int& a : v.a) row.push_back(int_to_json(a));
    row.push_back(int_to_json(v.n));
    vectors.push_back(std::move(row));
  }
  j["vectors"] = std::move(vectors);
  return j.dump(2) + "\n";
}

SpecialBasis basis_from_json(const std::string& text, mpfr_prec_t precision_bits) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("basis JSON parse error: ") + e.what());
  }
  if (!j.contains("s") || !j.contains("alpha") || !j.contains("vectors"))
    throw ConfigError("basis JSON must contain s, alpha and vectors");
  const std::size_t s = j["s"].get<std::size_t>();
  std::vector<std::string> alpha = j["alpha"].get<std::vector<std::string>>();
  if (alpha.size() != s) throw ConfigError("alpha length does not match s");
  RotationContext ctx(std::move(alpha), precision_bits);

  SpecialBasis basis{std::move(ctx), {}};
  const json& vectors = j["vectors"];
  if (!vectors.is_array() || vectors.size() != s + 1)
    throw ConfigError("vectors must hold s+1 rows");
  for (const json& row : vectors) {
    if (!row.is_array() || row.size() != s + 1)
      throw ConfigError("each vector must hold s+1 coordinates");
    LatticeVector v = LatticeVector::zero(s);
    for (std::size_t i = 0; i < s; ++i) v.a[i] = int_from_json(row[i]);
    v.n = int_from_json(row[s]);
    basis.v.push_back(std::move(v));
  }
  return basis;
}

std::string scheme_to_json(const Scheme& scheme) {
  json j;
  j["k"] = scheme.k();
  j["d"] = scheme.d();
  j["alphas"] = scheme.alpha_decimals();
  return j.dump(2) + "\n";
}

Scheme scheme_from_json(const std::string& text, mpfr_prec_t precision_bits) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scheme JSON parse error: ") + e.what());
  }
  if (!j.contains("k") || !j.contains("d") || !j.contains("alphas"))
    throw ConfigError("scheme JSON must contain k, d and alphas");
  return Scheme(j["k"].get<long>(), j["d"].get<long>(),
                j["alphas"].get<std::vector<std::vector<std::string>>>(), precision_bits);
}

namespace {

json condition_entry(const std::string& name, const ConditionCheck& c) {
  json e;
  e["condition"] = name;
  e["pass"] = c.pass;
  e["max_residual"] = "0";
  if (!c.pass) e["witness"] = c.detail;
  e["detail"] = c.detail;
  return e;
}

}  // namespace

std::string report_to_json(const ConditionReport* conditions, const RauzyReport* rauzy) {
  json j;
  json entries = json::array();
  if (conditions) {
    entries.push_back(condition_entry("S1", conditions->s1));
    entries.push_back(condition_entry("S2", conditions->s2));
    entries.push_back(condition_entry("S3", conditions->s3));
    entries.push_back(condition_entry("S4", conditions->s4));
    entries.push_back(condition_entry("sign_invariant", conditions->sign_invariant));
    j["determinant"] = int_to_json(conditions->determinant);
  }
  if (rauzy) {
    j["seed"] = rauzy->seed;
    for (const VerificationEntry& e : rauzy->entries) {
      json entry;
      entry["condition"] = e.condition;
      entry["pass"] = e.pass;
      entry["max_residual"] = real_to_json(e.max_residual);
      if (!e.witness.empty()) entry["witness"] = e.witness;
      entries.push_back(std::move(entry));
    }
  }
  j["conditions"] = std::move(entries);
  bool all = true;
  for (const json& e : j["conditions"])
    if (!e["pass"].get<bool>()) all = false;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

std::string trace_to_csv(const RemainderTrace& trace) {
  std::string out = "N,remainder\n";
  for (const auto& [n, r] : trace.samples) {
    out += std::to_string(n);
    out += ',';
    out += r.to_string();
    out += '\n';
  }
  return out;
}

std::string returns_to_csv(const ReturnSequence& seq) {
  std::string out = "k,ell";
  const std::size_t s = seq.entries.empty() ? 0 : seq.entries[0].u.size();
  for (std::size_t i = 1; i <= s; ++i) out += ",u_" + std::to_string(i);
  out += '\n';
  for (const ReturnEntry& e : seq.entries) {
    out += std::to_string(e.k);
    out += ',';
    out += e.ell.get_str();
    for (const Real& u : e.u) {
      out += ',';
      out += u.to_string();
    }
    out += '\n';
  }
  return out;
}

std::string points_to_csv(const PointSet& points) {
  if (points.points.empty()) return "";
  const std::size_t d = points.points[0].n.size();
  const std::size_t k = points.points[0].embedding.size();
  std::string out;
  for (std::size_t i = 1; i <= d; ++i) out += (i > 1 ? ",n_" : "n_") + std::to_string(i);
  for (std::size_t i = 1; i <= k; ++i) out += ",emb_" + std::to_string(i);
  out += '\n';
  for (const CpsPoint& p : points.points) {
    bool first = true;
    for (const Int& n : p.n) {
      if (!first) out += ',';
      first = false;
      out += n.get_str();
    }
    for (const Real& e : p.embedding) {
      out += ',';
      out += e.to_string();
    }
    out += '\n';
  }
  return out;
}

std::string pairing_to_csv(const BdPairing& pairing) {
  if (pairing.pairs.empty()) return "";
  const std::size_t d = pairing.pairs[0].n.size();
  std::string out;
  for (std::size_t i = 1; i <= d; ++i) out += (i > 1 ? ",n_" : "n_") + std::to_string(i);
  out += ",i,target_1,displacement\n";
  for (const BdPair& p : pairing.pairs) {
    bool first = true;
    for (const Int& n : p.n) {
      if (!first) out += ',';
      first = false;
      out += n.get_str();
    }
    out += ',';
    out += std::to_string(p.i);
    out += ',';
    out += p.target.to_string();
    out += ',';
    out += p.displacement.to_string();
    out += '\n';
  }
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  std::filesystem::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f.good()) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

}  // namespace brs
