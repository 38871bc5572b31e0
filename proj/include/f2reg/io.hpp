#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "f2reg/f2core.hpp"
#include "f2reg/regularize.hpp"
#include "f2reg/restrict.hpp"
#include "f2reg/spectrum.hpp"
#include "f2reg/verify.hpp"

namespace f2reg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "f2reg.report/1";

// Table text: "n=<k> scalar=<dyadic|rational|float> range=<bounded|pm1|int:C>", then 2^n
// values in index order. Dyadic values print as "num/2^exp", rational as "p/q", float
// as the shortest decimal that round-trips.
std::string write_table(const FunctionTable& f);
FunctionTable read_table(std::string_view text);

// Spectrum text: "n=<k> scalar=<...>", then "<gamma bitstring> <value>" per nonzero entry.
std::string write_spectrum(const Spectrum& s);
Spectrum read_spectrum(std::string_view text);

// Subspace text: "n=<k>", one basis row per line, then "shift=<bitstring>".
std::string write_subspace(const AffineSubspace& u);
AffineSubspace read_subspace(std::string_view text);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

std::string format_value(const DenseValues& v, std::size_t i);
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

Json to_json(const Rational& r);
Json to_json(const AffineSubspace& u);
Json to_json(const Witness& w);
Json to_json(const GreedyResult& r);
Json to_json(const PartitionResult& r);
Json to_json(const ShrinkIteration& it);
Json to_json(const BoundedDegreeResult& r);
Json to_json(const std::optional<ScanResult>& r);
Json to_json(const MinCertificate& m);
Json to_json(const DegreeOneReport& r);
Json to_json(const HomogeneousReport& r);
Json to_json(const MajorityReport& r);
Json to_json(const CompositionReport& r);
Json to_json(const CanonicalForm& r);
Json to_json(const ExtractorReport& r);
Json to_json(const DisperserReport& r);

// {"schema", "algorithm", "input_hash", "seed", "params"} with the remaining fields filled by callers.
Json make_report(const std::string& algorithm, std::string_view input, std::uint64_t seed, Json params);
// Plain text, one "path: value" line per scalar leaf.
std::string render_report(const Json& report);

}  // namespace f2reg
