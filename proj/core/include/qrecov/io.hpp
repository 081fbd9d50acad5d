#pragma once

// JSON interchange for matrices, channels, recovery maps, instances and
// reports, plus locale-independent number formatting.
//
// Matrix:   {"rows":n,"cols":m,"re":[...],"im":[...]} in row-major order.
// Channel:  {"in":d,"out":d2,"kraus":[matrix,...]}.
// Recovery: channel fields plus "provenance" and "t".
// Report:   {case, seed, dims, delta, bound, witness_t, deficit, verdict, t_trace:[...], ...}.
//
// Malformed JSON raises ParseError carrying the byte offset; well-formed
// JSON with missing or inconsistent fields raises ValidationError or ShapeError.

#include <string>
#include <string_view>

#include "qrecov/recovery.hpp"
#include "qrecov/verify.hpp"

namespace qrecov {

/// 12 significant digits, shortest form, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);
/// x rounded to 12 significant digits.
double round12(double x);

std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(std::string_view text);

std::string channel_to_json(const QuantumMap& map);
QuantumMap channel_from_json(std::string_view text);

std::string recovery_to_json(const RecoveryMap& map);
RecoveryMap recovery_from_json(std::string_view text);

/// Reads a density operator from the matrix format; `dims` optionally splits it into subsystems.
DensityOperator density_from_json(std::string_view text, const std::vector<std::size_t>& dims = {});
PsdOperator psd_from_json(std::string_view text, const std::vector<std::size_t>& dims = {});

/// Report numbers are rounded to 12 significant digits; infinite Nats become "inf".
std::string report_to_json(const CheckReport& r, bool include_trace = true);

/// Instances keep full double precision so that a re-check reproduces the verdict.
std::string instance_to_json(const Instance& inst, std::uint64_t seed);
Instance instance_from_json(std::string_view text, std::uint64_t* seed = nullptr);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qrecov
