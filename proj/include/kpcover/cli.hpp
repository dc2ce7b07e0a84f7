#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "kpcover/cover.hpp"
#include "kpcover/cyclotomic.hpp"
#include "kpcover/errors.hpp"
#include "kpcover/germ.hpp"
#include "kpcover/local_field.hpp"
#include "kpcover/numeric.hpp"
#include "kpcover/segments.hpp"
#include "kpcover/whittaker.hpp"

namespace kpc::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Everything a dispatch produces: the process exit status and the rendered
/// output (table or JSON, one trailing newline). Output is deterministic and
/// byte-identical across runs for identical invocations.
struct CliResult {
  int exit_code = kExitOk;
  std::string output;
};

namespace detail {

inline std::string js(std::int64_t v) { return std::to_string(v); }
inline std::string js(const Int& v) { return v.get_str(); }
inline std::string js(const Rat& v) { return v.get_str(); }

inline std::string render_json(const Json& doc) { return doc.dump(2) + "\n"; }

inline std::vector<std::int64_t> parse_int_list(const std::string& text,
                                                const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw parse_error(std::string("unparsable ") + what + ": " + text);
    }
  }
  if (out.empty()) throw parse_error(std::string("empty ") + what);
  return out;
}

inline Rat parse_rational(const std::string& text, const char* what) {
  try {
    Rat out(text);
    out.canonicalize();
    return out;
  } catch (const std::exception&) {
    throw parse_error(std::string("unparsable ") + what + ": " + text);
  }
}

inline LocalFieldModel resolve_model(std::int64_t q, std::int64_t n) {
  return LocalFieldModel::make(q > 0 ? q : smallest_prime_power_1_mod(n), n);
}

struct Renderer {
  bool json = false;
  Json doc;
  std::string table;

  void line(const std::string& s) { table += s + "\n"; }
  std::string finish() const { return json ? render_json(doc) : table; }
};

inline Json dim_json(const char* command, const DimResult& d, Json params) {
  Json out;
  out["command"] = command;
  out["value"] = js(d.value);
  out["provenance"] = to_string(d.provenance);
  out["conjectural"] = d.conjectural;
  out["params"] = std::move(params);
  return out;
}

inline std::string dim_table(const DimResult& d) {
  std::string out = "dim = " + js(d.value) + " (" + to_string(d.provenance) + ")";
  if (d.conjectural) out += " [conjectural regime]";
  return out;
}

}  // namespace detail

/// Parses argv-style arguments (without the program name), dispatches to the
/// corresponding module operation, and renders the result. Exit status: 0 on
/// success, 1 on check failures or domain/internal errors, 2 on usage errors.
inline CliResult run(const std::vector<std::string>& args) {
  CLI::App app{"exact invariants of Kazhdan-Patterson covers of GL(r)"};
  app.require_subcommand(1);

  std::string format;
  const char* env_format = std::getenv("KPCOVER_OUTPUT");
  format = env_format ? env_format : "table";
  app.add_option("--format", format, "output mode: table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // symbol
  auto* sym = app.add_subcommand("symbol", "tame Hilbert symbol exponent");
  std::string sym_model_text, sym_x, sym_y;
  std::int64_t sym_q = 0, sym_n = 0;
  sym->add_option("--model", sym_model_text, "field model as p^f;n");
  sym->add_option("--q", sym_q, "residue cardinality (prime power)");
  sym->add_option("--n", sym_n, "cover degree");
  sym->add_option("--x", sym_x, "first class as v:e")->required();
  sym->add_option("--y", sym_y, "second class as v:e")->required();

  // cover
  auto* cov = app.add_subcommand("cover", "gcd invariants and multiplicities");
  std::int64_t cov_n = 0, cov_c = 0, cov_r = 0;
  std::string cov_beta;
  cov->add_option("--n", cov_n, "cover degree")->required();
  cov->add_option("--c", cov_c, "twist parameter")->required();
  cov->add_option("--r", cov_r, "rank")->required();
  cov->add_option("--beta", cov_beta, "composition of r, e.g. 1,2,1");

  // expand
  auto* exp = app.add_subcommand("expand", "determinantal segment expansion");
  std::int64_t exp_m = 0, exp_r0 = 1, exp_n = 1, exp_k = 0;
  std::string exp_a = "0", exp_rho = "rho", exp_basis = "L";
  exp->add_option("--m", exp_m, "segment length")->required();
  exp->add_option("--a", exp_a, "left endpoint (rational)");
  exp->add_option("--rho", exp_rho, "cuspidal name");
  exp->add_option("--r0", exp_r0, "cuspidal rank");
  exp->add_option("--n", exp_n, "ambient mu_n order");
  exp->add_option("--k", exp_k, "mu_n character exponent");
  exp->add_option("--basis", exp_basis, "segment basis to expand: L or Z")
      ->check(CLI::IsMember({"L", "Z", "l", "z"}));

  // germ
  auto* grm = app.add_subcommand("germ", "germ value at a torsion torus point");
  std::int64_t grm_n = 0, grm_r0 = 1, grm_m = 1, grm_k = 0;
  std::string grm_x;
  grm->add_option("--n", grm_n, "mu_n order")->required();
  grm->add_option("--r0", grm_r0, "cuspidal rank");
  grm->add_option("--m", grm_m, "segment length");
  grm->add_option("--k", grm_k, "mu_n character exponent");
  grm->add_option("--x", grm_x, "torus point exponents e1,e2,...")->required();

  // dim
  auto* dim = app.add_subcommand("dim", "Whittaker dimensions");
  dim->require_subcommand(1);
  auto* dim_sqrt = dim->add_subcommand("sqrt", "square integrable closed form");
  std::int64_t ds_n = 0, ds_c = 0, ds_r0 = 1, ds_m = 0, ds_s = 1, ds_q = 0;
  bool ds_oracle = false;
  dim_sqrt->add_option("--n", ds_n, "cover degree")->required();
  dim_sqrt->add_option("--c", ds_c, "twist parameter");
  dim_sqrt->add_option("--r0", ds_r0, "cuspidal rank of the lift support");
  dim_sqrt->add_option("--m", ds_m, "cuspidal support length")->required();
  dim_sqrt->add_option("--s", ds_s, "order of the mu_n character");
  dim_sqrt->add_option("--q", ds_q, "residue cardinality for the oracle");
  dim_sqrt->add_flag("--oracle", ds_oracle, "evaluate by brute-force germ sum");

  auto* dim_l = dim->add_subcommand("l", "L(rho~,[0,k-1]) closed form");
  auto* dim_z = dim->add_subcommand("z", "Z(rho~,[0,k-1]) closed form");
  std::int64_t dl_n = 0, dl_c = 0, dl_r0 = 1, dl_s = 1, dl_k = 0;
  for (auto* sub : {dim_l, dim_z}) {
    sub->add_option("--n", dl_n, "cover degree")->required();
    sub->add_option("--c", dl_c, "twist parameter");
    sub->add_option("--r0", dl_r0, "cuspidal rank of the lift support");
    sub->add_option("--s", dl_s, "order of the mu_n character");
    sub->add_option("--k", dl_k, "cover-side segment length")->required();
  }

  auto* dim_prod = dim->add_subcommand("product", "Bernstein-Zelevinsky product");
  std::int64_t dp_n = 0, dp_c = 0;
  std::string dp_parts;
  dim_prod->add_option("--n", dp_n, "cover degree")->required();
  dim_prod->add_option("--c", dp_c, "twist parameter");
  dim_prod->add_option("--parts", dp_parts, "blocks as r1:d1,r2:d2,...")
      ->required();

  // check
  auto* chk = app.add_subcommand("check", "cross-verification sweeps");
  chk->require_subcommand(1);
  auto* chk_oracle = chk->add_subcommand(
      "oracle", "brute-force germ sum vs closed form on a sweep");
  std::int64_t co_n = 4, co_c = 2, co_r0 = 2, co_m = 4, co_r = 6;
  chk_oracle->add_option("--n", co_n, "max cover degree");
  chk_oracle->add_option("--c", co_c, "max twist");
  chk_oracle->add_option("--r0", co_r0, "max cuspidal rank");
  chk_oracle->add_option("--m", co_m, "max support length");
  chk_oracle->add_option("--r", co_r, "max total rank");
  auto* chk_ident =
      chk->add_subcommand("identities", "combinatorial identity checkers");
  std::int64_t ci_n = 8, ci_mk = 8;
  chk_ident->add_option("--n", ci_n, "max n");
  chk_ident->add_option("--mk", ci_mk, "max m and k");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::stringstream out;
    out << app.help();
    return {kExitOk, out.str()};
  } catch (const CLI::ParseError& e) {
    return {kExitUsage, std::string(e.what()) + "\n"};
  }

  detail::Renderer r;
  r.json = (format == "json");

  try {
    if (*sym) {
      LocalFieldModel model =
          !sym_model_text.empty()
              ? LocalFieldModel::parse(sym_model_text)
              : detail::resolve_model(sym_q, sym_n > 0 ? sym_n : 1);
      const auto x = FieldClass::parse(model, sym_x);
      const auto y = FieldClass::parse(model, sym_y);
      const auto h = hilbert_symbol(model, x, y);
      r.doc["command"] = "symbol";
      r.doc["model"] = model.to_string();
      r.doc["x"] = x.to_string();
      r.doc["y"] = y.to_string();
      r.doc["exponent"] = detail::js(h.exponent);
      r.line("model: " + model.to_string());
      r.line("(x,y) = zeta^" + std::to_string(h.exponent) + "  (exponent " +
             std::to_string(h.exponent) + " mod " + std::to_string(h.order) +
             ")");
      return {kExitOk, r.finish()};
    }

    if (*cov) {
      const auto cover = CoverParams::make(cov_r, cov_n, cov_c);
      const auto model =
          LocalFieldModel::make(smallest_prime_power_1_mod(cov_n), cov_n);
      Json params;
      params["n"] = detail::js(cov_n);
      params["c"] = detail::js(cover.c);
      params["r"] = detail::js(cov_r);
      r.doc["command"] = "cover";
      r.doc["params"] = params;
      r.doc["q"] = detail::js(model.q);
      r.doc["d_r"] = detail::js(d_r(cover));
      r.doc["d_prime_r"] = detail::js(d_prime_r(cover));
      r.doc["center_exponent"] =
          detail::js(mod_reduce(cover.center_exponent_lift(), cover.n));
      r.line("cover: r=" + std::to_string(cov_r) + " n=" +
             std::to_string(cov_n) + " c=" + std::to_string(cover.c) +
             "  (q=" + std::to_string(model.q) + ")");
      r.line("d_r = " + std::to_string(d_r(cover)));
      r.line("d'_r = " + std::to_string(d_prime_r(cover)));
      r.line("center exponent (2rc+r-1 mod n) = " +
             std::to_string(mod_reduce(cover.center_exponent_lift(), cover.n)));
      if (!cov_beta.empty()) {
        const auto beta = Composition::make(
            detail::parse_int_list(cov_beta, "composition"));
        const Int nb = n_beta(cover, model, beta);
        const Int mb = m_beta(cover, model, beta);
        const Int Mb = M_beta(cover, model, beta);
        r.doc["beta"] = cov_beta;
        r.doc["n_beta"] = detail::js(nb);
        r.doc["m_beta"] = detail::js(mb);
        r.doc["M_beta"] = detail::js(Mb);
        r.line("beta = (" + cov_beta + ")");
        r.line("n_beta = " + nb.get_str());
        r.line("m_beta = " + mb.get_str());
        r.line("M_beta = " + Mb.get_str());
      }
      return {kExitOk, r.finish()};
    }

    if (*exp) {
      const auto label =
          CuspidalLabel::make(exp_rho, exp_r0, exp_n, exp_k);
      const Rat a = detail::parse_rational(exp_a, "endpoint");
      const auto seg = Segment::make(label, a, a + (exp_m - 1));
      const bool from_L = (exp_basis == "L" || exp_basis == "l");
      const auto expansion = from_L ? tadic_expand_L(seg) : tadic_expand_Z(seg);
      const std::string basis_in = from_L ? "L" : "Z";
      const std::string basis_out = from_L ? "Z" : "L";
      r.doc["command"] = "expand";
      Json params;
      params["m"] = detail::js(exp_m);
      params["a"] = a.get_str();
      params["rho"] = exp_rho;
      params["r0"] = detail::js(exp_r0);
      params["n"] = detail::js(exp_n);
      params["k"] = detail::js(mod_reduce(exp_k, exp_n));
      r.doc["params"] = params;
      r.doc["basis_in"] = basis_in;
      r.doc["basis_out"] = basis_out;
      Json terms = Json::array();
      for (const auto& [term, coeff] : expansion.terms()) {
        Json jt;
        jt["coeff"] = detail::js(coeff);
        Json factors = Json::array();
        for (const auto& f : term.factors) factors.push_back(f.to_string());
        jt["factors"] = factors;
        terms.push_back(jt);
      }
      r.doc["terms"] = terms;
      r.line("expanding " + basis_in + "(" + seg.to_string() + ") into the " +
             basis_out + " basis:");
      for (const auto& [term, coeff] : expansion.terms()) {
        std::string lhs = (coeff >= 0 ? "  + " : "  - ");
        const Int mag = abs(coeff);
        if (mag != 1) lhs += mag.get_str() + "*";
        for (std::size_t i = 0; i < term.factors.size(); ++i) {
          if (i) lhs += "*";
          lhs += basis_out + "(" + term.factors[i].to_string() + ")";
        }
        r.line(lhs);
      }
      r.line("terms: " + std::to_string(expansion.size()));
      return {kExitOk, r.finish()};
    }

    if (*grm) {
      const auto label = CuspidalLabel::make("rho", grm_r0, grm_n, grm_k);
      const auto seg = Segment::make(label, Rat(0), Rat(grm_m - 1));
      const auto x =
          TorusPoint::make(grm_n, detail::parse_int_list(grm_x, "torus point"));
      const auto value = germ_L(seg, x);
      const auto integer = value.is_rational_integer();
      const bool conjectural = germ_regime_conjectural(seg);
      r.doc["command"] = "germ";
      Json params;
      params["n"] = detail::js(grm_n);
      params["r0"] = detail::js(grm_r0);
      params["m"] = detail::js(grm_m);
      params["k"] = detail::js(mod_reduce(grm_k, grm_n));
      params["x"] = grm_x;
      r.doc["params"] = params;
      r.doc["value"] = value.to_string();
      if (integer) r.doc["integer"] = detail::js(*integer);
      r.doc["conjectural"] = conjectural;
      if (integer)
        r.line("germ value = " + integer->get_str());
      else
        r.line("germ value = " + value.to_string());
      if (conjectural) r.line("(conjectural regime)");
      return {kExitOk, r.finish()};
    }

    if (*dim_sqrt) {
      const auto cover = CoverParams::make(ds_r0 * ds_m, ds_n, ds_c);
      Json params;
      params["n"] = detail::js(ds_n);
      params["c"] = detail::js(cover.c);
      params["r0"] = detail::js(ds_r0);
      params["m"] = detail::js(ds_m);
      params["s"] = detail::js(ds_s);
      DimResult result = dim_sqrt_closed(cover, ds_r0, ds_m, ds_s);
      if (ds_oracle) {
        const auto model = detail::resolve_model(ds_q, ds_n);
        const auto label =
            CuspidalLabel::make("rho", ds_r0, ds_n, ds_n / ds_s);
        result = dim_sqrt_bruteforce(cover, model, ds_r0, ds_m, label);
        params["q"] = detail::js(model.q);
      }
      r.doc = detail::dim_json("dim sqrt", result, params);
      r.line(detail::dim_table(result));
      return {kExitOk, r.finish()};
    }

    if (*dim_l || *dim_z) {
      const auto cover = CoverParams::make(dl_r0 * dl_s * dl_k, dl_n, dl_c);
      const bool is_l = static_cast<bool>(*dim_l);
      const DimResult result = is_l ? dim_L_closed(cover, dl_r0, dl_s, dl_k)
                                    : dim_Z_closed(cover, dl_r0, dl_s, dl_k);
      Json params;
      params["n"] = detail::js(dl_n);
      params["c"] = detail::js(cover.c);
      params["r0"] = detail::js(dl_r0);
      params["s"] = detail::js(dl_s);
      params["k"] = detail::js(dl_k);
      r.doc = detail::dim_json(is_l ? "dim l" : "dim z", result, params);
      r.line(detail::dim_table(result));
      return {kExitOk, r.finish()};
    }

    if (*dim_prod) {
      std::vector<std::pair<std::int64_t, Int>> parts;
      std::int64_t rank_sum = 0;
      {
        std::stringstream ss(dp_parts);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos)
            throw parse_error("parts must be r1:d1,r2:d2,...");
          try {
            const std::int64_t ri = std::stoll(item.substr(0, colon));
            const Int di(item.substr(colon + 1));
            parts.emplace_back(ri, di);
            rank_sum += ri;
          } catch (const error&) {
            throw;
          } catch (const std::exception&) {
            throw parse_error("unparsable parts: " + dp_parts);
          }
        }
      }
      const auto cover = CoverParams::make(rank_sum, dp_n, dp_c);
      const DimResult result = dim_product(cover, parts);
      Json params;
      params["n"] = detail::js(dp_n);
      params["c"] = detail::js(cover.c);
      params["parts"] = dp_parts;
      r.doc = detail::dim_json("dim product", result, params);
      r.line(detail::dim_table(result));
      return {kExitOk, r.finish()};
    }

    if (*chk_oracle) {
      const auto cases = oracle_sweep_cases(co_n, co_c, co_r0, co_m, co_r);
      const auto outcomes = run_oracle_sweep(cases);
      bool all_match = true;
      Json jcases = Json::array();
      for (const auto& o : outcomes) {
        all_match = all_match && o.match;
        Json jc;
        jc["n"] = detail::js(o.params.n);
        jc["q"] = detail::js(o.params.q);
        jc["c"] = detail::js(o.params.c);
        jc["r0"] = detail::js(o.params.r0);
        jc["m"] = detail::js(o.params.m);
        jc["s"] = detail::js(o.params.s);
        jc["closed"] = detail::js(o.closed.value);
        jc["brute"] = detail::js(o.brute.value);
        jc["match"] = o.match;
        jcases.push_back(jc);
        r.line(std::string(o.match ? "ok  " : "FAIL") + " n=" +
               std::to_string(o.params.n) + " q=" + std::to_string(o.params.q) +
               " c=" + std::to_string(o.params.c) +
               " r0=" + std::to_string(o.params.r0) +
               " m=" + std::to_string(o.params.m) +
               " s=" + std::to_string(o.params.s) +
               " closed=" + detail::js(o.closed.value) +
               " brute=" + detail::js(o.brute.value));
      }
      r.doc["command"] = "check oracle";
      r.doc["cases"] = jcases;
      r.doc["all_match"] = all_match;
      r.line(std::string("oracle check: ") +
             (all_match ? "all " : "MISMATCHES among ") +
             std::to_string(outcomes.size()) + " tuples" +
             (all_match ? " match" : ""));
      return {all_match ? kExitOk : kExitCheckFailed, r.finish()};
    }

    if (*chk_ident) {
      const auto outcomes = run_identity_sweep(ci_n, ci_mk);
      bool all_pass = true;
      Json jcases = Json::array();
      for (const auto& o : outcomes) {
        all_pass = all_pass && o.pass;
        Json jc;
        jc["kind"] = o.kind;
        jc["n"] = detail::js(o.n);
        jc["s"] = detail::js(o.s);
        jc["arg"] = detail::js(o.arg);
        jc["pass"] = o.pass;
        jcases.push_back(jc);
        r.line(std::string(o.pass ? "ok  " : "FAIL") + " " + o.kind +
               " n=" + std::to_string(o.n) + " s=" + std::to_string(o.s) +
               " arg=" + std::to_string(o.arg));
      }
      r.doc["command"] = "check identities";
      r.doc["cases"] = jcases;
      r.doc["all_pass"] = all_pass;
      r.line(std::string("identity check: ") + (all_pass ? "all " : "FAILURES among ") +
             std::to_string(outcomes.size()) + " cases" +
             (all_pass ? " pass" : ""));
      return {all_pass ? kExitOk : kExitCheckFailed, r.finish()};
    }
  } catch (const parse_error& e) {
    return {kExitUsage, std::string("usage error: ") + e.what() + "\n"};
  } catch (const internal_error& e) {
    return {kExitCheckFailed, std::string("internal inconsistency: ") + e.what() + "\n"};
  } catch (const error& e) {
    return {kExitCheckFailed, std::string("error: ") + e.what() + "\n"};
  }

  return {kExitUsage, "no subcommand selected\n"};
}

inline int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const CliResult result = run(args);
  if (result.exit_code == kExitUsage)
    std::fputs(result.output.c_str(), stderr);
  else
    std::fputs(result.output.c_str(), stdout);
  return result.exit_code;
}

}  // namespace kpc::cli
