#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "triwave/diagnostics.hpp"
#include "triwave/stability.hpp"

namespace triwave::cli {

enum class Format { JsonLines, Csv };

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g, with "nan"/"inf" spelled out.
std::string format_double(double x);

nlohmann::json to_json(const GroundStateResult& r);
nlohmann::json to_json(const JResult& r);
nlohmann::json to_json(const Params& p);

/// JsonLines: one object with the scalar fields. Csv: the minimizer profile
/// with columns x,re_u1,im_u1,re_u2,im_u2,re_u3,im_u3.
void emit_results(const GroundStateResult& r, Format fmt, const std::filesystem::path& path);
void emit_results(const JResult& r, Format fmt, const std::filesystem::path& path);
/// One row (or JSON line) per sample: t,energy_drift,q1_drift,q2_drift.
void emit_results(const ConservationTrace& c, Format fmt, const std::filesystem::path& path);
/// One row per sample: t,orbital_distance,energy_drift,q1_drift,q2_drift.
void emit_results(const StabilityReport& s, Format fmt, const std::filesystem::path& path);
/// One row per split: the six masses, i_sum, i_part1, i_part2, margin, strict, error.
void emit_results(const std::vector<SubadditivityRow>& rows, Format fmt, const std::filesystem::path& path);
void emit_results(const ConcentrationProfile& c, Format fmt, const std::filesystem::path& path);

/// Profile CSV preceded by "# N=... L=... p=... alpha=... beta=".
void write_profile_csv(const TriField& v, const Params& params, const std::filesystem::path& path);
/// Inverse of write_profile_csv; values round-trip exactly.
std::pair<TriField, Params> read_profile_csv(const std::filesystem::path& path);

void write_energy_trace_csv(const std::vector<double>& trace, const std::filesystem::path& path);

/// The only file carrying wall-clock data.
void write_meta(const std::filesystem::path& dir, const std::string& command, const std::vector<std::string>& argv);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace triwave::cli
