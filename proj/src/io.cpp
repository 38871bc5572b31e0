#include "f2reg/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "f2reg/error.hpp"

namespace f2reg {
namespace {

std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Header {
  int n = -1;
  std::string scalar = "dyadic";
  Range range = Range::bounded();
};

Header parse_header(std::string_view line) {
  Header h;
  for (auto tok : tokens(line)) {
    auto eq = tok.find('=');
    require(eq != std::string_view::npos, ErrorCode::kParseError, "header token '" + std::string(tok) + "'");
    auto key = tok.substr(0, eq);
    auto val = tok.substr(eq + 1);
    if (key == "n") {
      int n = 0;
      auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
      require(ec == std::errc{} && p == val.data() + val.size() && n >= 0 && n <= 30, ErrorCode::kParseError,
              "bad n in header");
      h.n = n;
    } else if (key == "scalar") {
      require(val == "dyadic" || val == "rational" || val == "float", ErrorCode::kParseError,
              "unknown scalar '" + std::string(val) + "'");
      h.scalar = std::string(val);
    } else if (key == "range") {
      h.range = Range::parse(val);
    } else {
      fail(ErrorCode::kParseError, "unknown header key '" + std::string(key) + "'");
    }
  }
  require(h.n >= 0, ErrorCode::kParseError, "header lacks n=");
  return h;
}

std::string scalar_name(const DenseValues& v) {
  if (!v.is_exact()) return "float";
  return is_pow2(v.den()) ? "dyadic" : "rational";
}

double parse_double(std::string_view s) {
  double d = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  require(ec == std::errc{} && p == s.data() + s.size(), ErrorCode::kParseError, "bad float '" + std::string(s) + "'");
  return d;
}

DenseValues parse_values(const std::string& scalar, const std::vector<std::string_view>& raw) {
  if (scalar == "float") {
    std::vector<double> v;
    v.reserve(raw.size());
    for (auto s : raw) v.push_back(parse_double(s));
    return DenseValues::floating(std::move(v));
  }
  std::vector<Rational> v;
  v.reserve(raw.size());
  for (auto s : raw) {
    Rational r = parse_rational(s);
    if (scalar == "dyadic")
      require(Dyadic::from_rational(r).has_value(), ErrorCode::kParseError, "non-dyadic value '" + std::string(s) + "'");
    v.push_back(r);
  }
  return DenseValues::from_rationals(v);
}

std::string json_bits(std::uint64_t bits, int n) { return bits_to_string(bits, n); }

}  // namespace

std::string format_value(const DenseValues& v, std::size_t i) {
  if (!v.is_exact()) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v.doubles()[i]);
    return std::string(buf, p);
  }
  if (is_pow2(v.den())) return Dyadic::make(v.num()[i], log2_exact(v.den())).to_string();
  return rational_to_string(v.exact_at(i));
}

std::string write_table(const FunctionTable& f) {
  std::string out = "n=" + std::to_string(f.n()) + " scalar=" + scalar_name(f.values()) +
                    " range=" + f.range().to_string() + "\n";
  for (std::size_t x = 0; x < f.size(); ++x) out += format_value(f.values(), x) + "\n";
  return out;
}

FunctionTable read_table(std::string_view text) {
  auto lines = content_lines(text);
  require(!lines.empty(), ErrorCode::kParseError, "empty table");
  Header h = parse_header(lines[0]);
  std::size_t size = std::size_t{1} << h.n;
  require(lines.size() - 1 == size, ErrorCode::kParseError,
          "expected " + std::to_string(size) + " values, got " + std::to_string(lines.size() - 1));
  std::vector<std::string_view> raw(lines.begin() + 1, lines.end());
  return FunctionTable(h.n, parse_values(h.scalar, raw), h.range);
}

std::string write_spectrum(const Spectrum& s) {
  std::string out = "n=" + std::to_string(s.n()) + " scalar=" + scalar_name(s.coeffs()) + "\n";
  for (std::size_t g = 0; g < s.size(); ++g)
    if (!s.coeffs().is_zero(g)) out += bits_to_string(g, s.n()) + " " + format_value(s.coeffs(), g) + "\n";
  return out;
}

Spectrum read_spectrum(std::string_view text) {
  auto lines = content_lines(text);
  require(!lines.empty(), ErrorCode::kParseError, "empty spectrum");
  Header h = parse_header(lines[0]);
  std::size_t size = std::size_t{1} << h.n;
  std::vector<std::string_view> raw(size, "0");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto t = tokens(lines[i]);
    require(t.size() == 2 && static_cast<int>(t[0].size()) == h.n, ErrorCode::kParseError,
            "bad spectrum line '" + std::string(lines[i]) + "'");
    raw[parse_bits(t[0])] = t[1];
  }
  return Spectrum(h.n, parse_values(h.scalar, raw));
}

std::string write_subspace(const AffineSubspace& u) {
  std::string out = "n=" + std::to_string(u.n()) + "\n";
  for (const auto& r : u.space().to_strings()) out += r + "\n";
  out += "shift=" + bits_to_string(u.shift(), u.n()) + "\n";
  return out;
}

AffineSubspace read_subspace(std::string_view text) {
  auto lines = content_lines(text);
  require(!lines.empty(), ErrorCode::kParseError, "empty subspace");
  Header h = parse_header(lines[0]);
  std::vector<std::string> rows;
  std::uint64_t shift = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].substr(0, 6) == "shift=") {
      auto s = lines[i].substr(6);
      require(static_cast<int>(s.size()) == h.n, ErrorCode::kParseError, "shift length differs from n");
      shift = parse_bits(s);
    } else {
      rows.emplace_back(lines[i]);
    }
  }
  return AffineSubspace(Subspace::parse(h.n, rows), shift);
}

Json certificate_to_json(const Certificate& c) {
  Json rows = Json::array();
  for (int i = 0; i < c.n; ++i) rows.push_back(bits_to_string(c.m.row(i), c.n));
  return Json{{"n", c.n}, {"M", rows}, {"J", c.j}, {"b", bits_to_string(c.b, c.n)}, {"delta", rational_to_string(c.delta)}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.n = j.at("n").get<int>();
    require(c.n >= 0 && c.n <= kMaxBits, ErrorCode::kParseError, "certificate n out of range");
    std::vector<std::uint64_t> rows;
    for (const auto& r : j.at("M")) {
      auto s = r.get<std::string>();
      require(static_cast<int>(s.size()) == c.n, ErrorCode::kParseError, "certificate row length differs from n");
      rows.push_back(parse_bits(s));
    }
    require(static_cast<int>(rows.size()) == c.n, ErrorCode::kParseError, "certificate needs n rows");
    c.m = Mat2::from_rows(c.n, rows);
    c.j = j.at("J").get<std::vector<int>>();
    auto b = j.at("b").get<std::string>();
    require(static_cast<int>(b.size()) == c.n, ErrorCode::kParseError, "certificate b length differs from n");
    c.b = parse_bits(b);
    c.delta = parse_rational(j.at("delta").get<std::string>());
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("certificate json: ") + e.what());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Rational& r) { return rational_to_string(r); }

Json to_json(const AffineSubspace& u) {
  return Json{{"n", u.n()}, {"dim", u.dim()}, {"basis", u.space().to_strings()}, {"shift", json_bits(u.shift(), u.n())}};
}

Json to_json(const Witness& w) { return Json{{"gamma", w.gamma}, {"magnitude", to_json(w.magnitude)}}; }

Json to_json(const GreedyResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace)
    trace.push_back(Json{{"gamma", s.gamma},
                         {"b", s.b},
                         {"magnitude", to_json(s.magnitude)},
                         {"mean_before", to_json(s.mean_before)},
                         {"mean_after", to_json(s.mean_after)},
                         {"codim", s.codim}});
  return Json{{"codim", r.subspace.codim()},
              {"subspace", to_json(r.subspace)},
              {"trace", trace},
              {"certificate", certificate_to_json(r.certificate)}};
}

Json to_json(const PartitionResult& r) {
  Json parts = Json::array();
  int max_codim = 0;
  for (const auto& p : r.parts) {
    max_codim = std::max(max_codim, p.subspace.codim());
    parts.push_back(Json{{"codim", p.subspace.codim()},
                         {"subspace", to_json(p.subspace)},
                         {"mass", to_json(p.mass)},
                         {"mean", to_json(p.mean)},
                         {"regular", p.regular}});
  }
  Json trace = Json::array();
  for (const auto& t : r.trace)
    trace.push_back(Json{{"round", t.round},
                         {"irregular_fraction", to_json(t.irregular_fraction)},
                         {"potential_before", to_json(t.potential_before)},
                         {"potential_after", to_json(t.potential_after)},
                         {"parts_before", t.parts_before},
                         {"parts_after", t.parts_after}});
  return Json{{"part_count", r.parts.size()},
              {"max_codim", max_codim},
              {"potential", to_json(r.potential)},
              {"irregular_fraction", to_json(r.irregular_fraction)},
              {"trace", trace},
              {"parts", parts}};
}

Json to_json(const ShrinkIteration& it) {
  return Json{{"index", it.index},      {"pivot", it.pivot},   {"S", it.s},
              {"z", it.z},              {"guaranteed", it.guaranteed}, {"examined", it.examined},
              {"K", it.k},              {"alive", it.alive.size()},     {"invariant_ok", it.invariant_ok}};
}

Json to_json(const BoundedDegreeResult& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json iters = Json::array();
    for (const auto& it : l.shrink.trace) iters.push_back(to_json(it));
    Json lv{{"depth", l.depth}, {"d", l.d},         {"n", l.n},         {"delta", to_json(l.delta)},
            {"tau", to_json(l.tau)}, {"J", l.shrink.j}, {"iterations", iters},
            {"size_bound_applicable", l.shrink.size_bound_applicable}};
    if (l.shrink.size_bound_applicable) {
      lv["size_bound"] = l.shrink.size_bound;
      lv["size_bound_met"] = l.shrink.size_bound_met;
    }
    levels.push_back(lv);
  }
  Json out{{"codim", r.certificate.n - static_cast<int>(r.certificate.j.size())},
           {"levels", levels},
           {"final_max", r.final_max ? to_json(*r.final_max) : Json(nullptr)},
           {"certificate", certificate_to_json(r.certificate)}};
  return out;
}

Json to_json(const std::optional<ScanResult>& r) {
  if (!r) return Json{{"found", false}};
  return Json{{"found", true}, {"codim", r->codim}, {"subspace", to_json(r->witness)}};
}

Json to_json(const MinCertificate& m) {
  return Json{{"size", m.size}, {"coords", m.coords}, {"b", m.b}};
}

Json to_json(const DegreeOneReport& r) {
  return Json{{"claim", "degree-one"}, {"n", r.n}, {"delta", to_json(r.delta)}, {"max_codim", r.max_codim},
              {"mode", "exhaustive"}, {"counterexample", to_json(r.regular)}, {"passed", r.passed}};
}

Json to_json(const HomogeneousReport& r) {
  Json by_dim = Json::object();
  for (const auto& [dim, c] : r.regular_by_dim) by_dim[std::to_string(dim)] = c;
  Json above = Json::array();
  for (const auto& u : r.regular_above_threshold) above.push_back(to_json(u));
  return Json{{"claim", "random-homogeneous"},
              {"n", r.n},
              {"d", r.d},
              {"delta", to_json(r.delta)},
              {"seed", r.seed},
              {"mode", r.mode},
              {"dim_threshold", r.dim_threshold},
              {"restrictions", r.restrictions},
              {"odd_cosets", r.odd_cosets},
              {"obstruction_failures", r.obstruction_failures},
              {"regular_by_dim", by_dim},
              {"counterexamples", above},
              {"passed", r.passed}};
}

Json to_json(const MajorityReport& r) {
  return Json{{"claim", "majority"}, {"n", r.n}, {"delta", to_json(r.delta)}, {"codim_cap", r.codim_cap},
              {"mode", "exhaustive"}, {"min_max_coefficient", to_json(r.min_max_coefficient)},
              {"counterexample", to_json(r.regular)}, {"passed", r.passed}};
}

Json to_json(const CompositionReport& r) {
  return Json{{"claim", "composition"}, {"pk_f", r.pk_f}, {"cmin_f", r.cmin_f}, {"pk_g", r.pk_g},
              {"pk_fg", r.pk_fg}, {"b_g", r.b_g}, {"hypothesis", r.hypothesis}, {"holds", r.holds}};
}

Json to_json(const CanonicalForm& r) {
  Json rows = Json::array();
  for (int i = 0; i < r.k + r.n; ++i) rows.push_back(bits_to_string(r.l.row(i), r.k + r.n));
  Json cons = Json::array();
  for (const auto& c : r.constraints) cons.push_back(Json{{"a", bits_to_string(c.a, r.k + r.n)}, {"sigma", c.sigma}});
  return Json{{"claim", "canonize"}, {"k", r.k}, {"n", r.n}, {"L", rows}, {"pairs", r.pairs},
              {"x_only", r.x_only}, {"y_only", r.y_only}, {"constraints", cons}};
}

Json to_json(const ExtractorReport& r) {
  return Json{{"claim", "extractor"}, {"n", r.n}, {"c", r.c}, {"k", r.k}, {"mode", "exhaustive"},
              {"delta", to_json(r.delta)}, {"bound", to_json(r.bound)}, {"worst", to_json(r.worst)},
              {"checked", r.checked}, {"violations", r.violations}, {"passed", r.passed}};
}

Json to_json(const DisperserReport& r) {
  Json out{{"claim", "disperser"}, {"n", r.n}, {"d", r.d}, {"g", to_json(r.g)}, {"delta", to_json(r.delta)},
           {"granular", r.granular}};
  if (r.granular) {
    out["certificate"] = certificate_to_json(r.certificate);
    out["certificate_ok"] = r.certificate_ok;
    out["constant"] = r.constant;
  }
  out["passed"] = r.passed;
  return out;
}

Json make_report(const std::string& algorithm, std::string_view input, std::uint64_t seed, Json params) {
  return Json{{"schema", kReportSchema},
              {"algorithm", algorithm},
              {"input_hash", "fnv1a64:" + hash_hex(fnv1a64(input))},
              {"seed", seed},
              {"params", std::move(params)}};
}

namespace {
void render(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      std::string line;
      for (const auto& e : j) line += (line.empty() ? "" : " ") + (e.is_string() ? e.get<std::string>() : e.dump());
      out += path + ": [" + line + "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out += path + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}
}  // namespace

std::string render_report(const Json& report) {
  require(report.is_object(), ErrorCode::kParseError, "report must be a JSON object");
  std::string out;
  render(report, "", out);
  return out;
}

}  // namespace f2reg
