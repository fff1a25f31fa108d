#include "steklov/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace steklov::io {

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw InvalidArgument("write failed: " + path.string());
}

Json rounded(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(round_sig(x));
  return a;
}

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InvalidArgument(std::string("expected a number for '") + key + "'");
  return j.at(key).get<double>();
}

RealVector numbers(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw InvalidArgument(std::string("expected an array for '") + key + "'");
  RealVector v;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw InvalidArgument(std::string("non-numeric entry in '") + key + "'");
    v.push_back(x.get<double>());
  }
  return v;
}

}  // namespace

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double round_sig(double x, int digits) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x, digits).c_str(), nullptr);
}

Json curve_spec_to_json(const CurveSpec& spec) {
  Json j;
  j["family"] = spec.family;
  j["params"] = {{"r", spec.params.r}, {"a", spec.params.a}};
  j["kind"] = to_string(spec.kind);
  if (spec.alpha) j["alpha"] = {spec.alpha->real(), spec.alpha->imag()};
  if (spec.perimeter_normalize) j["perimeter_normalize"] = *spec.perimeter_normalize;
  return j;
}

CurveSpec curve_spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("curve spec must be a JSON object");
  CurveSpec spec;
  if (!j.contains("family") || !j.at("family").is_string())
    throw InvalidArgument("curve spec needs a 'family' string");
  spec.family = j.at("family").get<std::string>();
  if (j.contains("params")) {
    const Json& p = j.at("params");
    if (!p.is_object()) throw InvalidArgument("'params' must be an object");
    for (const auto& [key, value] : p.items()) {
      if (key != "r" && key != "a") throw InvalidArgument("unknown curve parameter '" + key + "'");
      if (!value.is_number()) throw InvalidArgument("curve parameter '" + key + "' must be a number");
    }
    if (p.contains("r")) spec.params.r = p.at("r").get<double>();
    if (p.contains("a")) spec.params.a = p.at("a").get<double>();
  }
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw InvalidArgument("'kind' must be a string");
    spec.kind = parse_domain_kind(j.at("kind").get<std::string>());
  }
  if (j.contains("alpha") && !j.at("alpha").is_null()) {
    const Json& a = j.at("alpha");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw InvalidArgument("'alpha' must be [re, im]");
    spec.alpha = complex(a[0].get<double>(), a[1].get<double>());
  }
  if (j.contains("perimeter_normalize") && !j.at("perimeter_normalize").is_null())
    spec.perimeter_normalize = number(j, "perimeter_normalize");
  return spec;
}

Json spectrum_to_json(const SteklovSpectrum& s, const std::optional<CurveSpec>& spec) {
  Json j;
  j["schema"] = kSchema;
  j["curve"] = s.curve;
  j["family"] = s.family;
  j["params"] = {{"r", round_sig(s.params.r)}, {"a", round_sig(s.params.a)}};
  j["kind"] = to_string(s.kind);
  j["alpha"] = {round_sig(s.alpha.real()), round_sig(s.alpha.imag())};
  j["n"] = s.n;
  j["k"] = s.k;
  j["lambdas"] = rounded(s.lambdas);
  j["lambdas_scaled"] = rounded(s.lambdas_scaled);
  j["residuals"] = rounded(s.residuals);
  j["zero_modes"] = rounded(s.zero_modes);
  j["perimeter"] = round_sig(s.perimeter);
  j["area"] = round_sig(s.area);
  j["eigensolver"] = {{"dense", s.dense}, {"restarts", s.restarts}};
  if (spec) j["curve_spec"] = curve_spec_to_json(*spec);
  return j;
}

void write_spectrum(const fs::path& dir, const SteklovSpectrum& s,
                    const std::optional<CurveSpec>& spec) {
  Json j = spectrum_to_json(s, spec);
  j["traces_csv"] = "traces.csv";
  j["conjugates_csv"] = "conjugates.csv";
  write_json(dir / "spectrum.json", j);
  write_columns_csv(dir / "traces.csv", s.t, s.traces);
  write_columns_csv(dir / "conjugates.csv", s.t, s.conjugates);
}

void write_spectrum_csv(const fs::path& path, const SteklovSpectrum& s) {
  auto out = open_out(path);
  out << "mode,lambda,lambda_scaled,residual\n";
  for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
    out << i + 1 << ',' << format_number(s.lambdas[i]) << ','
        << (i < s.lambdas_scaled.size() ? format_number(s.lambdas_scaled[i]) : "") << ','
        << format_number(s.residuals[i]) << '\n';
  }
  finish(out, path);
}

void write_columns_csv(const fs::path& path, std::span<const double> t, const RealMatrix& m) {
  if (t.size() != m.rows()) throw InvalidArgument("write_columns_csv: size mismatch");
  auto out = open_out(path);
  out << 't';
  for (std::size_t c = 0; c < m.cols(); ++c) out << ",mode_" << c + 1;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << format_number(t[r], 17);
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << format_number(m(r, c), 17);
    out << '\n';
  }
  finish(out, path);
}

RealMatrix read_columns_csv(const fs::path& path, RealVector* t) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument(path.string() + ": empty file");
  std::vector<RealVector> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RealVector row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw InvalidArgument(path.string() + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidArgument(path.string() + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().size() < 2) throw InvalidArgument(path.string() + ": no data");
  RealMatrix m(rows.size(), rows.front().size() - 1);
  if (t) t->resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (t) (*t)[r] = rows[r][0];
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c + 1];
  }
  return m;
}

LoadedSpectrum load_spectrum(const fs::path& json_path) {
  const Json j = read_json(json_path);
  if (!j.is_object() || j.value("schema", "") != std::string(kSchema))
    throw InvalidArgument(json_path.string() + ": not a " + kSchema + " spectrum document");
  LoadedSpectrum out;
  if (j.contains("curve_spec")) {
    out.spec = curve_spec_from_json(j.at("curve_spec"));
  } else {
    Json cs;
    cs["family"] = j.at("family");
    cs["params"] = j.at("params");
    cs["kind"] = j.at("kind");
    cs["alpha"] = j.at("alpha");
    out.spec = curve_spec_from_json(cs);
  }
  SteklovSpectrum& s = out.spectrum;
  try {
    s.curve = j.at("curve").get<std::string>();
    s.family = j.value("family", "");
    s.params = {number(j.at("params"), "r"), number(j.at("params"), "a")};
    s.kind = parse_domain_kind(j.at("kind").get<std::string>());
    const RealVector alpha = numbers(j, "alpha");
    if (alpha.size() == 2) s.alpha = {alpha[0], alpha[1]};
    s.n = j.at("n").get<std::size_t>();
    s.k = j.at("k").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(json_path.string() + ": " + e.what());
  }
  s.lambdas = numbers(j, "lambdas");
  s.lambdas_scaled = numbers(j, "lambdas_scaled");
  s.residuals = numbers(j, "residuals");
  s.zero_modes = numbers(j, "zero_modes");
  s.perimeter = number(j, "perimeter");
  s.area = number(j, "area");
  const fs::path base = json_path.parent_path();
  s.traces = read_columns_csv(base / j.value("traces_csv", "traces.csv"), &s.t);
  s.conjugates = read_columns_csv(base / j.value("conjugates_csv", "conjugates.csv"));
  if (s.lambdas.size() != s.k || s.traces.rows() != s.n || s.traces.cols() != s.k ||
      s.conjugates.rows() != s.n || s.conjugates.cols() != s.k)
    throw InvalidArgument(json_path.string() + ": trace files do not match n and k");
  return out;
}

Json error_json(const std::string& type, const std::string& message, int exit_code) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"type", type}, {"message", message}, {"exit_code", exit_code}};
  return j;
}

void write_convergence_csv(const fs::path& path, std::span<const ConvergenceRecord> rows) {
  auto out = open_out(path);
  out << "n,mode,lambda,rel_error\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.lambdas.size(); ++i)
      out << r.n << ',' << i + 1 << ',' << format_number(r.lambdas[i]) << ','
          << format_number(r.rel_errors[i]) << '\n';
  finish(out, path);
}

void write_sweep_csv(const fs::path& path, std::span<const SweepRecord> rows) {
  auto out = open_out(path);
  out << "r,a,n,perimeter,area";
  const std::size_t k = rows.empty() ? 0 : rows.front().lambdas.size();
  for (std::size_t i = 0; i < k; ++i) out << ",lambda_" << i + 1;
  out << '\n';
  for (const auto& r : rows) {
    out << format_number(r.r) << ',' << format_number(r.a) << ',' << r.n << ','
        << format_number(r.perimeter) << ',' << format_number(r.area);
    for (double l : r.lambdas) out << ',' << format_number(l);
    out << '\n';
  }
  finish(out, path);
}

void write_gaps_csv(const fs::path& path, std::span<const GapRecord> rows) {
  auto out = open_out(path);
  out << "k,eps,eps_prime\n";
  for (const auto& g : rows)
    out << g.k << ',' << format_number(g.eps) << ',' << format_number(g.eps_prime) << '\n';
  finish(out, path);
}

void write_inequalities_csv(const fs::path& path, const InequalityReport& rep) {
  auto out = open_out(path);
  out << "r,a,lambda_1,lambda_2,inverse_sum,product,bound,slack_sum,slack_product,slack_bound,"
         "holds\n";
  for (const auto& r : rep.rows) {
    out << format_number(r.r) << ',' << format_number(r.a) << ',' << format_number(r.lambda1)
        << ',' << format_number(r.lambda2) << ',' << format_number(r.inverse_sum) << ','
        << format_number(r.product) << ',' << format_number(r.bound) << ','
        << format_number(r.slack_sum) << ',' << format_number(r.slack_product) << ','
        << format_number(r.slack_bound) << ',' << (r.holds ? 1 : 0) << '\n';
  }
  finish(out, path);
}

void write_field_csv(const fs::path& path, const FieldSample& f) {
  auto out = open_out(path);
  out << "x,y,u,flag\n";
  for (std::size_t i = 0; i < f.points.size(); ++i)
    out << format_number(f.points[i].real()) << ',' << format_number(f.points[i].imag()) << ','
        << format_number(f.u[i]) << ',' << static_cast<int>(f.flags[i]) << '\n';
  finish(out, path);
}

void write_matrix_csv(const fs::path& path, const RealMatrix& m) {
  auto out = open_out(path);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      out << (c ? "," : "") << format_number(m(r, c), 17);
    out << '\n';
  }
  finish(out, path);
}

Json convergence_to_json(std::span<const ConvergenceRecord> rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back({{"n", r.n}, {"lambdas", rounded(r.lambdas)}, {"rel_errors", rounded(r.rel_errors)}});
  return {{"schema", kSchema}, {"convergence", a}};
}

Json sweep_to_json(std::span<const SweepRecord> rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back({{"r", round_sig(r.r)},
                 {"a", round_sig(r.a)},
                 {"n", r.n},
                 {"perimeter", round_sig(r.perimeter)},
                 {"area", round_sig(r.area)},
                 {"lambdas", rounded(r.lambdas)}});
  return {{"schema", kSchema}, {"sweep", a}};
}

Json gaps_to_json(std::span<const GapRecord> rows) {
  Json a = Json::array();
  for (const auto& g : rows)
    a.push_back({{"k", g.k}, {"eps", round_sig(g.eps)}, {"eps_prime", round_sig(g.eps_prime)}});
  return {{"schema", kSchema}, {"gaps", a}};
}

Json inequalities_to_json(const InequalityReport& rep) {
  Json a = Json::array();
  for (const auto& r : rep.rows) {
    Json row = {{"r", round_sig(r.r)},
                {"a", round_sig(r.a)},
                {"lambda_1", round_sig(r.lambda1)},
                {"lambda_2", round_sig(r.lambda2)}};
    if (rep.kind == DomainKind::BoundedInterior) {
      row["inverse_sum"] = round_sig(r.inverse_sum);
      row["product"] = round_sig(r.product);
      row["slack_sum"] = round_sig(r.slack_sum);
      row["slack_product"] = round_sig(r.slack_product);
    } else {
      row["bound"] = round_sig(r.bound);
      row["slack_bound"] = round_sig(r.slack_bound);
    }
    row["holds"] = r.holds;
    a.push_back(row);
  }
  return {{"schema", kSchema},
          {"kind", to_string(rep.kind)},
          {"tol", rep.tol},
          {"all_hold", rep.all_hold},
          {"rows", a}};
}

Json crossing_to_json(const CrossingResult& c) {
  return {{"schema", kSchema},
          {"family", c.family},
          {"kind", to_string(c.kind)},
          {"k", c.k},
          {"r", round_sig(c.r)},
          {"a", round_sig(c.a)},
          {"lambda_k", round_sig(c.lambda_k)},
          {"lambda_k1", round_sig(c.lambda_k1)},
          {"gap", round_sig(c.gap)},
          {"n", c.n},
          {"evaluations", c.evaluations}};
}

void write_json(const fs::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace steklov::io
