#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "steklov/curves.hpp"
#include "steklov/extension.hpp"
#include "steklov/steklov.hpp"
#include "steklov/studies.hpp"

namespace steklov::io {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

inline constexpr const char* kSchema = "steklov/1";

/// printf("%.*g"); nan and inf print as "nan", "inf", "-inf".
std::string format_number(double x, int digits = 15);
/// x rounded to `digits` significant digits.
double round_sig(double x, int digits = 15);

/// {family, params: {r, a}, kind, alpha: [re, im], perimeter_normalize}.
Json curve_spec_to_json(const CurveSpec& spec);
CurveSpec curve_spec_from_json(const Json& j);

/// Spectrum document; numbers rounded to 15 significant digits.
Json spectrum_to_json(const SteklovSpectrum& s, const std::optional<CurveSpec>& spec = {});

/// dir/spectrum.json, dir/traces.csv and dir/conjugates.csv.
void write_spectrum(const fs::path& dir, const SteklovSpectrum& s,
                    const std::optional<CurveSpec>& spec = {});
/// mode,lambda,lambda_scaled,residual
void write_spectrum_csv(const fs::path& path, const SteklovSpectrum& s);

/// t,mode_1,...,mode_k with 17 significant digits (exact round trip).
void write_columns_csv(const fs::path& path, std::span<const double> t, const RealMatrix& m);
RealMatrix read_columns_csv(const fs::path& path, RealVector* t = nullptr);

struct LoadedSpectrum {
  CurveSpec spec;
  SteklovSpectrum spectrum;
};
/// Reads a spectrum document and the trace files it names.
LoadedSpectrum load_spectrum(const fs::path& json_path);

Json error_json(const std::string& type, const std::string& message, int exit_code);

/// n,mode,lambda,rel_error
void write_convergence_csv(const fs::path& path, std::span<const ConvergenceRecord> rows);
/// r,a,n,perimeter,area,lambda_1,...
void write_sweep_csv(const fs::path& path, std::span<const SweepRecord> rows);
/// k,eps,eps_prime
void write_gaps_csv(const fs::path& path, std::span<const GapRecord> rows);
/// r,a,lambda_1,lambda_2,inverse_sum,product,bound,slack_sum,slack_product,slack_bound,holds
void write_inequalities_csv(const fs::path& path, const InequalityReport& rep);
/// x,y,u,flag
void write_field_csv(const fs::path& path, const FieldSample& f);
/// Plain matrix, 17 significant digits.
void write_matrix_csv(const fs::path& path, const RealMatrix& m);

Json convergence_to_json(std::span<const ConvergenceRecord> rows);
Json sweep_to_json(std::span<const SweepRecord> rows);
Json gaps_to_json(std::span<const GapRecord> rows);
Json inequalities_to_json(const InequalityReport& rep);
Json crossing_to_json(const CrossingResult& c);

void write_json(const fs::path& path, const Json& j);
Json read_json(const fs::path& path);

}  // namespace steklov::io
