#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "f2reg/error.hpp"
#include "f2reg/families.hpp"
#include "f2reg/io.hpp"
#include "f2reg/regularize.hpp"
#include "f2reg/verify.hpp"

namespace {

using namespace f2reg;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitInvariant = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string scalar = "exact";
  int threads = 1;
  bool timing = false;
  std::string out = "-";
};

std::string slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

Rational parse_delta(const std::string& text, const Globals& g) {
  bool decimal = text.find('.') != std::string::npos || text.find('e') != std::string::npos;
  if (decimal && g.scalar != "float") throw UsageError("delta must be an exact rational P/Q (decimals need --scalar float)");
  Rational r = parse_rational(text, g.scalar == "float");
  if (r < 0) throw UsageError("delta must be nonnegative");
  return r;
}

ScanOptions scan_opts(const Globals& g) {
  ScanOptions o;
  o.threads = std::max(1, g.threads);
  return o;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void stamp(Json& report, const Globals& g) const {
    if (!g.timing) return;
    report["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int run(int argc, char** argv) {
  CLI::App app{"Regularity certificates for functions on F_2^n"};
  // Global options are also accepted after the subcommand name.
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--scalar", g.scalar, "exact (default) or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--threads", g.threads, "cap on internal parallelism")->check(CLI::PositiveNumber);
  app.add_flag("--timing", g.timing, "record wall time in reports");
  app.add_option("-o,--out", g.out, "output path, - for stdout");

  std::string input = "-";
  std::string delta_text;

  auto* spectrum = app.add_subcommand("spectrum", "Walsh-Hadamard spectrum, degree and regularity");
  std::string spectrum_file;
  spectrum->add_option("table", input, "table file or -");
  spectrum->add_option("--delta", delta_text, "regularity threshold P/Q");
  spectrum->add_option("--spectrum-out", spectrum_file, "also write the spectrum file");

  auto* regularize = app.add_subcommand("regularize", "find a regular restriction");
  std::string algo = "greedy";
  int degree_opt = -1;
  int max_codim = -1;
  std::uint64_t seed = 0;
  std::string cert_file;
  regularize->add_option("table", input, "table file or -");
  regularize->add_option("--algo", algo)->check(CLI::IsMember({"greedy", "partition", "degree-d", "exact"}));
  regularize->add_option("--delta", delta_text, "P/Q")->required();
  regularize->add_option("--degree", degree_opt, "degree bound for degree-d");
  regularize->add_option("--max-codim", max_codim, "scan limit for exact");
  regularize->add_option("--seed", seed, "recorded in the report");
  regularize->add_option("--cert", cert_file, "also write the certificate file");

  auto* family = app.add_subcommand("family", "emit a table from a named family");
  std::string fam;
  int fn = 0, fd = 1, fk = 1, fc = 1;
  std::string fg = "2";
  family->add_option("name", fam)->required()->check(CLI::IsMember(
      {"maj", "mean-of-signs", "homogeneous", "pkc", "granular", "bounded", "unit", "boolean", "integer", "low-degree"}));
  family->add_option("--n", fn);
  family->add_option("--d", fd);
  family->add_option("--k", fk);
  family->add_option("--c", fc);
  family->add_option("--g", fg);
  family->add_option("--seed", seed);

  auto* booleanize = app.add_subcommand("booleanize", "random +-1 rounding of a bounded table");
  booleanize->add_option("table", input, "table file or -");
  booleanize->add_option("--seed", seed);

  auto* paritykill = app.add_subcommand("paritykill", "fewest parities making the table constant");
  paritykill->add_option("table", input, "table file or -");
  paritykill->add_option("--max-codim", max_codim);

  auto* verify = app.add_subcommand("verify", "run a claim checker");
  std::string claim;
  std::string mode = "exhaustive";
  std::uint64_t samples = 1000;
  int codim_cap = 1, ell = 1;
  std::string f_file, g_file, v_file, w_file, cert_in;
  std::vector<std::string> constraints;
  verify->add_option("claim", claim)->required()->check(CLI::IsMember(
      {"degree-one", "homogeneous", "majority", "composition", "canonize", "extractor", "disperser", "std-basis",
       "low-weight", "certificate"}));
  verify->add_option("table", input, "table file or - (extractor, disperser, certificate)");
  verify->add_option("--n", fn);
  verify->add_option("--d", fd);
  verify->add_option("--k", fk);
  verify->add_option("--g", fg);
  verify->add_option("--delta", delta_text);
  verify->add_option("--max-codim", max_codim);
  verify->add_option("--codim-cap", codim_cap);
  verify->add_option("--seed", seed);
  verify->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--samples", samples);
  verify->add_option("--f", f_file, "table file of the outer function");
  verify->add_option("--g-table", g_file, "table file of the inner function");
  verify->add_option("--v", v_file, "subspace file for V");
  verify->add_option("--w", w_file, "subspace file for W");
  verify->add_option("--ell", ell);
  verify->add_option("--constraint", constraints, "bitstring:sigma over x then y");
  verify->add_option("--cert", cert_in, "certificate file");

  auto* report = app.add_subcommand("report", "render a JSON report as text");
  report->add_option("report", input, "report file or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  Timer timer;
  ScanOptions opts = scan_opts(g);

  if (*spectrum) {
    std::string text = slurp(input);
    FunctionTable f = read_table(text);
    if (g.scalar == "float" && f.is_exact())
      f = FunctionTable::unchecked(f.n(), f.values().to_floating(), f.range());
    Spectrum s = wht(f);
    Json params{{"scalar", s.is_exact() ? "exact" : "float"}};
    if (!delta_text.empty()) params["delta"] = delta_text;
    Json rep = make_report("spectrum", text, 0, params);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < s.size(); ++i) nonzero += !s.coeffs().is_zero(i);
    rep["n"] = f.n();
    rep["degree"] = degree(s);
    rep["support"] = nonzero;
    if (s.is_exact()) {
      auto w = max_nontrivial(s);
      rep["mean"] = to_json(s.at(0));
      rep["max_nontrivial"] = w ? to_json(*w) : Json(nullptr);
      if (!delta_text.empty()) rep["regular"] = is_regular(s, parse_delta(delta_text, g));
    } else {
      double best = 0;
      std::uint64_t arg = 0;
      for (std::size_t i = 1; i < s.size(); ++i)
        if (std::abs(s.at_double(i)) > best) best = std::abs(s.at_double(i)), arg = i;
      rep["mean"] = s.at_double(0);
      rep["max_nontrivial"] = Json{{"gamma", arg}, {"magnitude", best}};
      if (!delta_text.empty()) rep["regular"] = best <= to_double(parse_delta(delta_text, g));
    }
    if (!spectrum_file.empty()) emit(spectrum_file, write_spectrum(s));
    timer.stamp(rep, g);
    emit(g.out, dump(rep));
    return 0;
  }

  if (*regularize) {
    std::string text = slurp(input);
    FunctionTable f = read_table(text);
    if (!f.is_exact()) throw UsageError("regularize needs an exact table");
    Rational delta = parse_delta(delta_text, g);
    Json params{{"delta", rational_to_string(delta)}};
    std::optional<Certificate> cert;
    Json body;
    if (algo == "greedy") {
      auto r = greedy_regularize(f, delta);
      cert = r.certificate;
      body = to_json(r);
    } else if (algo == "partition") {
      body = to_json(partition_regularize(f, delta));
    } else if (algo == "degree-d") {
      int d = degree_opt >= 0 ? degree_opt : degree(wht(f));
      params["degree"] = d;
      auto r = regularize_bounded_degree(f, d, delta);
      cert = r.certificate;
      body = to_json(r);
    } else {
      params["max_codim"] = max_codim;
      auto r = exact_regularity_number(f, delta, max_codim, opts);
      body = to_json(r);
      if (r) {
        cert = certificate_from_affine(r->witness, delta);
        body["certificate"] = certificate_to_json(*cert);
      }
    }
    Json rep = make_report(algo, text, seed, params);
    for (auto& [k, v] : body.items()) rep[k] = v;
    if (cert) rep["verified"] = certificate_verify(f, *cert);
    if (cert && !cert_file.empty()) emit(cert_file, certificate_to_json(*cert).dump(2) + "\n");
    timer.stamp(rep, g);
    emit(g.out, dump(rep));
    return 0;
  }

  if (*family) {
    Rational gran = parse_rational(fg);
    FunctionTable f;
    if (fam == "maj") f = majority(fn);
    else if (fam == "mean-of-signs") f = mean_of_signs(fn);
    else if (fam == "homogeneous") f = random_homogeneous(fn, fd, seed);
    else if (fam == "pkc") f = pkc_compose(fk);
    else if (fam == "granular") f = random_granular(fn, fd, gran, seed);
    else if (fam == "bounded") f = random_bounded(fn, seed);
    else if (fam == "unit") f = random_unit_interval(fn, seed);
    else if (fam == "boolean") f = random_boolean(fn, seed);
    else if (fam == "integer") f = random_integer(fn, fc, seed);
    else f = inverse_wht(random_low_degree(fn, fd, seed).to_dense());
    emit(g.out, write_table(f));
    return 0;
  }

  if (*booleanize) {
    emit(g.out, write_table(booleanize_sample(read_table(slurp(input)), seed)));
    return 0;
  }

  if (*paritykill) {
    std::string text = slurp(input);
    FunctionTable f = read_table(text);
    auto r = parity_kill(f, max_codim, opts);
    Json rep = make_report("paritykill", text, 0, Json{{"max_codim", max_codim}});
    rep["parity_kill"] = r ? Json(r->codim) : Json(nullptr);
    rep["result"] = to_json(r);
    timer.stamp(rep, g);
    emit(g.out, dump(rep));
    return 0;
  }

  if (*verify) {
    std::string text;
    Json body;
    Json params{{"claim", claim}};
    auto need_delta = [&] {
      if (delta_text.empty()) throw UsageError("--delta is required for " + claim);
      params["delta"] = delta_text;
      return parse_delta(delta_text, g);
    };
    if (claim == "degree-one") {
      Rational delta = need_delta();
      params["n"] = fn;
      body = to_json(check_degree_one_lb(fn, delta, max_codim < 0 ? fn : max_codim, opts));
    } else if (claim == "homogeneous") {
      Rational delta = need_delta();
      params["n"] = fn;
      params["d"] = fd;
      params["mode"] = mode;
      body = to_json(check_random_homogeneous_lb(fn, fd, delta, seed, mode == "exhaustive", samples, opts));
    } else if (claim == "majority") {
      Rational delta = need_delta();
      params["n"] = fn;
      params["codim_cap"] = codim_cap;
      body = to_json(check_majority_lb(fn, delta, codim_cap, opts));
    } else if (claim == "composition") {
      if (f_file.empty() || g_file.empty()) throw UsageError("composition needs --f and --g-table");
      std::string ft = slurp(f_file), gt = slurp(g_file);
      text = ft + gt;
      body = to_json(check_composition_theorem(read_table(ft), read_table(gt), opts));
    } else if (claim == "canonize") {
      std::vector<Constraint> cs;
      int total = -1;
      for (const auto& c : constraints) {
        auto colon = c.find(':');
        if (colon == std::string::npos) throw UsageError("constraint must be bits:sigma");
        std::string bits = c.substr(0, colon);
        if (total >= 0 && static_cast<int>(bits.size()) != total) throw UsageError("constraints differ in length");
        total = static_cast<int>(bits.size());
        cs.push_back({parse_bits(bits), std::stoi(c.substr(colon + 1))});
      }
      params["k"] = fk;
      params["n"] = fn;
      if (total >= 0 && total != fk + fn) throw UsageError("constraint length must be k + n");
      body = to_json(canonize_affine_constraints(fk, fn, cs));
    } else if (claim == "extractor") {
      text = slurp(input);
      params["k"] = fk;
      body = to_json(check_extractor_implies_regular(read_table(text), fk));
    } else if (claim == "disperser") {
      text = slurp(input);
      params["d"] = fd;
      params["g"] = fg;
      body = to_json(check_granular_disperser(read_table(text), fd, parse_rational(fg)));
    } else if (claim == "std-basis" || claim == "low-weight") {
      if (v_file.empty() || w_file.empty()) throw UsageError(claim + " needs --v and --w");
      std::string vt = slurp(v_file), wt = slurp(w_file);
      text = vt + wt;
      Subspace v = read_subspace(vt).space(), w = read_subspace(wt).space();
      if (claim == "std-basis") {
        auto st = std_basis_coset_stats(v, w);
        body = Json{{"claim", claim}, {"codim", st.codim}, {"S", st.s}, {"S1", st.s1},
                    {"passed", static_cast<int>(st.s.size()) >= v.n() - st.codim &&
                                   static_cast<int>(st.s1.size()) >= v.n() - 2 * st.codim}};
      } else {
        params["ell"] = ell;
        auto levels = build_low_weight_sets(v, w, ell);
        body = Json{{"claim", claim}, {"codim", v.codim()}, {"S", levels.back()},
                    {"passed", static_cast<int>(levels.back().size()) >= v.n() - v.codim() * (ell + 1)}};
      }
    } else {
      if (cert_in.empty()) throw UsageError("certificate needs --cert");
      text = slurp(input);
      Certificate c = certificate_from_json(Json::parse(slurp(cert_in)));
      bool ok = certificate_verify(read_table(text), c);
      body = Json{{"claim", claim}, {"passed", ok}};
    }
    Json rep = make_report("verify", text, seed, params);
    for (auto& [k, v] : body.items()) rep[k] = v;
    timer.stamp(rep, g);
    emit(g.out, dump(rep));
    return 0;
  }

  if (*report) {
    Json j;
    try {
      j = Json::parse(slurp(input));
    } catch (const nlohmann::json::exception& e) {
      throw IoError(std::string("report is not JSON: ") + e.what());
    }
    emit(g.out, render_report(j));
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kCapExceeded: return kExitCap;
      case ErrorCode::kInvariantViolation:
      case ErrorCode::kNoCollisionWithinBudget: return kExitInvariant;
      case ErrorCode::kParseError: return kExitIo;
      default: return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
