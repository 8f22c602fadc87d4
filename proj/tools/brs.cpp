// Command-line front end: constructs special regions, verifies the region
// conditions, and emits orbit/point-set artifacts as CSV/JSON.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "brs/cutproject.hpp"
#include "brs/dynamics.hpp"
#include "brs/errors.hpp"
#include "brs/serialize.hpp"

namespace {

using namespace brs;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "lo:hi" with either side possibly negative.
IntRange parse_range(const std::string& text) {
  auto pos = text.find(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
    throw ConfigError("range must be lo:hi, got '" + text + "'");
  try {
    return IntRange{Int(text.substr(0, pos)), Int(text.substr(pos + 1))};
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed range '" + text + "'");
  }
}

// Either a comma list of 1-based directions or rr:<count> for round-robin.
std::vector<std::size_t> parse_steps(const std::string& text, std::size_t s) {
  std::vector<std::size_t> js;
  if (text.rfind("rr:", 0) == 0) {
    long count = std::stol(text.substr(3));
    if (count < 0) throw ConfigError("negative round-robin count");
    for (long i = 0; i < count; ++i) js.push_back(static_cast<std::size_t>(i) % s);
    return js;
  }
  for (const std::string& tok : split_commas(text)) {
    long j = 0;
    try {
      j = std::stol(tok);
    } catch (const std::exception&) {
      throw ConfigError("malformed step index '" + tok + "'");
    }
    if (j < 1 || static_cast<std::size_t>(j) > s)
      throw ConfigError("step index out of 1.." + std::to_string(s));
    js.push_back(static_cast<std::size_t>(j - 1));
  }
  return js;
}

RVector parse_point(const std::string& text, std::size_t s, mpfr_prec_t prec) {
  if (text.empty()) return RVector(s, Real(prec));
  std::vector<std::string> parts = split_commas(text);
  if (parts.size() != s) throw ConfigError("point must have s components");
  RVector x;
  for (const std::string& p : parts) x.push_back(Real::from_decimal(p, prec));
  return x;
}

struct CommonOpts {
  mpfr_prec_t precision = 256;
  std::uint64_t seed = 20260809;
};

SpecialBasis load_basis(const std::string& path, mpfr_prec_t prec) {
  return basis_from_json(read_file(path), prec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded remainder sets and cut-and-project point sets for toral rotations"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--precision", opts.precision, "working precision in bits (>= 64)")
      ->envname("BRS_PRECISION_BITS")
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "seed for sampled verifications")->capture_default_str();

  // construct
  auto* construct = app.add_subcommand("construct", "build a special region basis");
  std::string c_alpha, c_steps, c_out;
  construct->add_option("--alpha", c_alpha, "comma list of decimal rotation components")
      ->required();
  construct->add_option("--steps", c_steps,
                        "comma list of 1-based directions, or rr:<count> (default rr:s)");
  construct->add_option("--out", c_out, "output basis JSON path");
  construct->callback([&] {
    RotationContext ctx(split_commas(c_alpha), opts.precision);
    std::string steps = c_steps.empty() ? ("rr:" + std::to_string(ctx.s())) : c_steps;
    SpecialBasis basis = construct_basis(ctx, parse_steps(steps, ctx.s()));
    if (!c_out.empty()) atomic_write(c_out, basis_to_json(basis));
    std::cout << "volume=" << geometry(basis).volume().to_string(20) << "\n";
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check (S1)-(S4) and Rauzy's conditions");
  std::string v_basis, v_out;
  long long v_samples = 10000;
  verify->add_option("--basis", v_basis, "basis JSON path")->required();
  verify->add_option("--samples", v_samples, "sample count for R1/R2")->capture_default_str();
  verify->add_option("--out", v_out, "report JSON path");
  verify->callback([&] {
    SpecialBasis basis = load_basis(v_basis, opts.precision);
    ConditionReport cond = check_conditions(basis);
    RauzyReport rauzy = verify_rauzy(geometry(basis), v_samples, opts.seed);
    if (!v_out.empty()) atomic_write(v_out, report_to_json(&cond, &rauzy));
    bool pass = cond.all_pass() && rauzy.all_pass();
    std::cout << "pass=" << (pass ? "true" : "false")
              << " r2_residual=" << rauzy.entries[1].max_residual.to_string(8) << "\n";
    if (!pass) throw VerificationFailure("region fails the verification suite");
  });

  // trace
  auto* trace = app.add_subcommand("trace", "remainder trace of an orbit");
  std::string t_basis, t_box, t_alpha, t_x0, t_out;
  long long t_n = 0, t_stride = 1;
  trace->add_option("--basis", t_basis, "basis JSON path");
  trace->add_option("--box", t_box, "comma list of box side lengths (control region)");
  trace->add_option("--alpha", t_alpha, "rotation for --box mode");
  trace->add_option("--x0", t_x0, "orbit start (default 0)");
  trace->add_option("--N", t_n, "orbit length")->required();
  trace->add_option("--stride", t_stride, "sample stride")->capture_default_str();
  trace->add_option("--out", t_out, "output CSV path")->required();
  trace->callback([&] {
    std::optional<RegionGeometry> geom;
    if (!t_basis.empty()) {
      geom = geometry(load_basis(t_basis, opts.precision));
    } else if (!t_box.empty() && !t_alpha.empty()) {
      RotationContext ctx(split_commas(t_alpha), opts.precision);
      RVector sides;
      for (const std::string& v : split_commas(t_box))
        sides.push_back(Real::from_decimal(v, opts.precision));
      geom = RegionGeometry::box(ctx, sides);
    } else {
      throw ConfigError("trace needs --basis, or --box with --alpha");
    }
    RVector x0 = parse_point(t_x0, geom->s(), opts.precision);
    RemainderTrace tr = remainder_trace(*geom, x0, t_n, t_stride);
    atomic_write(t_out, trace_to_csv(tr));
    std::cout << "max_abs=" << tr.max_abs.to_string(12) << " members=" << tr.member_count
              << "\n";
  });

  // returns
  auto* returns = app.add_subcommand("returns", "first-return sequence of the region");
  std::string r_basis, r_method = "renorm", r_x0, r_out;
  long long r_count = 0;
  returns->add_option("--basis", r_basis, "basis JSON path")->required();
  returns->add_option("--count", r_count, "number of returns")->required();
  returns->add_option("--method", r_method, "naive | renorm")->capture_default_str();
  returns->add_option("--x0", r_x0, "orbit start for the naive method (default 0)");
  returns->add_option("--out", r_out, "output CSV path")->required();
  returns->callback([&] {
    RegionGeometry geom = geometry(load_basis(r_basis, opts.precision));
    ReturnSequence seq;
    if (r_method == "naive") {
      seq = naive_returns(geom, parse_point(r_x0, geom.s(), opts.precision), r_count);
    } else if (r_method == "renorm") {
      if (!r_x0.empty()) throw ConfigError("the renormalized method is anchored at x0 = 0");
      seq = renormalized_returns(geom, r_count);
    } else {
      throw ConfigError("method must be naive or renorm");
    }
    atomic_write(r_out, returns_to_csv(seq));
    std::cout << "count=" << r_count << " ell_last=" << seq.entries.back().ell.get_str()
              << "\n";
  });

  // cps
  auto* cps = app.add_subcommand("cps", "generate a cut-and-project point set");
  std::string p_scheme, p_basis, p_steps, p_offset, p_x, p_tails, p_n1, p_out;
  cps->add_option("--scheme", p_scheme, "scheme JSON path")->required();
  cps->add_option("--basis", p_basis, "section basis JSON (else --steps builds one)");
  cps->add_option("--steps", p_steps, "construction steps for the section (default rr:s)");
  cps->add_option("--offset", p_offset, "section translate w (comma decimals)");
  cps->add_option("--x", p_x, "full R^k starting offset, folded into the translate");
  cps->add_option("--tails", p_tails, "comma list of lo:hi ranges for n_2..n_d");
  cps->add_option("--n1", p_n1, "lo:hi range for n_1")->required();
  cps->add_option("--out", p_out, "output CSV path")->required();

  auto build_section = [&](const std::string& scheme_path, const std::string& basis_path,
                           const std::string& steps, const std::string& offset,
                           const std::string& start_x) {
    Scheme scheme = scheme_from_json(read_file(scheme_path), opts.precision);
    RegionGeometry region = [&] {
      if (!basis_path.empty()) return geometry(load_basis(basis_path, opts.precision));
      const RotationContext& ctx = scheme.rotation();
      std::string st = steps.empty() ? ("rr:" + std::to_string(ctx.s())) : steps;
      return geometry(construct_basis(ctx, parse_steps(st, ctx.s())));
    }();
    if (!offset.empty() && !start_x.empty())
      throw ConfigError("--offset and --x are mutually exclusive");
    RVector w;
    if (!start_x.empty()) {
      // Fold a full R^k starting offset into a window translate:
      // w_j = x_{d+j} - sum_i alpha_i^(j) x_i.
      RVector x = parse_point(start_x, static_cast<std::size_t>(scheme.k()), opts.precision);
      const std::size_t d = static_cast<std::size_t>(scheme.d());
      const std::size_t sdim = static_cast<std::size_t>(scheme.s());
      for (std::size_t j = 0; j < sdim; ++j) {
        Real wj = x[d + j];
        for (std::size_t i = 0; i < d; ++i) wj -= scheme.rows()[i][j] * x[i];
        w.push_back(std::move(wj));
      }
    } else {
      w = parse_point(offset, region.s(), opts.precision);
    }
    return SectionedScheme(std::move(scheme), std::move(region), std::move(w));
  };
  auto parse_tails = [&](const std::string& text, long d) {
    std::vector<IntRange> tails;
    if (!text.empty())
      for (const std::string& tok : split_commas(text)) tails.push_back(parse_range(tok));
    if (tails.size() != static_cast<std::size_t>(d - 1))
      throw ConfigError("--tails must provide d-1 ranges");
    return tails;
  };

  cps->callback([&] {
    SectionedScheme ss = build_section(p_scheme, p_basis, p_steps, p_offset, p_x);
    PointSet pts = generate_points(ss, parse_tails(p_tails, ss.scheme.d()), parse_range(p_n1));
    atomic_write(p_out, points_to_csv(pts));
    std::cout << "points=" << pts.points.size() << "\n";
  });

  // bdmap
  auto* bdmap = app.add_subcommand("bdmap", "bounded-distance pairing to the reference lattice");
  std::string b_scheme, b_basis, b_steps, b_offset, b_x, b_tails, b_n1, b_out;
  bdmap->add_option("--scheme", b_scheme, "scheme JSON path")->required();
  bdmap->add_option("--basis", b_basis, "section basis JSON (else --steps builds one)");
  bdmap->add_option("--steps", b_steps, "construction steps for the section (default rr:s)");
  bdmap->add_option("--offset", b_offset, "section translate w (comma decimals)");
  bdmap->add_option("--x", b_x, "full R^k starting offset, folded into the translate");
  bdmap->add_option("--tails", b_tails, "comma list of lo:hi ranges for n_2..n_d");
  bdmap->add_option("--n1", b_n1, "lo:hi range for n_1")->required();
  bdmap->add_option("--out", b_out, "output CSV path")->required();
  bdmap->callback([&] {
    SectionedScheme ss = build_section(b_scheme, b_basis, b_steps, b_offset, b_x);
    BdPairing pr = bd_pairing(ss, parse_tails(b_tails, ss.scheme.d()), parse_range(b_n1));
    atomic_write(b_out, pairing_to_csv(pr));
    std::cout << "sup_displacement=" << pr.sup_displacement.to_string(12)
              << " columns=" << pr.columns.size()
              << " v_scale=" << embedding_operator_norm(ss.scheme).to_string(12) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const BoundaryAmbiguity& e) {
    std::cerr << "precision/ambiguity failure: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateCoefficient& e) {
    std::cerr << "precision/ambiguity failure: " << e.what() << "\n";
    return 2;
  } catch (const SingularBasis& e) {
    std::cerr << "precision/ambiguity failure: " << e.what() << "\n";
    return 2;
  } catch (const NonReturning& e) {
    std::cerr << "precision/ambiguity failure: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const InjectivityViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const CardinalityViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
