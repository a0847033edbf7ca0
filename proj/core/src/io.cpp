#include "mtsr/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <tuple>

#include <json.hpp>

#include "mtsr/errors.hpp"

namespace mtsr {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> allowed) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& item : doc.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(item.key(), "unknown key");
  }
}

std::size_t as_count(const json& value, const std::string& field) {
  if (!value.is_number_unsigned()) {
    throw ConfigError(field, "expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

double as_real(const json& value, const std::string& field) {
  if (!value.is_number()) throw ConfigError(field, "expected a number");
  return value.get<double>();
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw ConfigError(field, "missing required key");
  return *it;
}

template <class T, class Convert>
std::vector<T> as_list(const json& value, const std::string& field, Convert&& convert) {
  if (!value.is_array()) throw ConfigError(field, "expected an array");
  std::vector<T> out;
  for (const auto& v : value) out.push_back(convert(v, field));
  return out;
}

void check_open_unit(double v, const char* field) {
  if (!(v > 0.0 && v < 1.0)) throw ConfigError(field, "must lie in (0, 1)");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view field, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError(std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* procedure_colour(Procedure p) {
  switch (p) {
    case Procedure::lasso:
      return "#1f77b4";
    case Procedure::group_l2:
      return "#d62728";
    case Procedure::group_linf:
      return "#2ca02c";
    case Procedure::union_of_supports:
      return "#9467bd";
  }
  return "#000000";
}

}  // namespace

ProblemConfig problem_config_from_json(const std::string& text) {
  const json doc = parse_json(text);
  reject_unknown_keys(doc, {"p", "k", "s", "n", "sigma0", "beta", "epsilon", "alpha_prime",
                            "delta_prime"});
  ProblemConfig c;
  c.p = as_count(require(doc, "p"), "p");
  c.k = as_count(require(doc, "k"), "k");
  c.s = as_count(require(doc, "s"), "s");
  c.n = as_count(require(doc, "n"), "n");
  c.sigma0 = as_real(require(doc, "sigma0"), "sigma0");
  c.beta = as_real(require(doc, "beta"), "beta");
  c.alpha_prime = as_real(require(doc, "alpha_prime"), "alpha_prime");
  c.delta_prime = as_real(require(doc, "delta_prime"), "delta_prime");
  if (auto it = doc.find("epsilon"); it != doc.end()) {
    c.epsilon = as_real(*it, "epsilon");
  } else {
    c.epsilon = std::pow(static_cast<double>(c.k), -c.beta);
  }
  c.validate();
  return c;
}

std::string to_json(const ProblemConfig& c) {
  json doc = {{"p", c.p},
              {"k", c.k},
              {"s", c.s},
              {"n", c.n},
              {"sigma0", c.sigma0},
              {"beta", c.beta},
              {"epsilon", c.epsilon},
              {"alpha_prime", c.alpha_prime},
              {"delta_prime", c.delta_prime}};
  return doc.dump(2) + "\n";
}

SweepConfig sweep_config_from_json(const std::string& text) {
  const json doc = parse_json(text);
  reject_unknown_keys(doc, {"p_list", "beta_list", "rho_grid", "n_runs", "procedures",
                            "master_seed", "alpha_prime", "delta_prime", "sigma0", "mu_scale"});
  SweepConfig c;
  c.p_list = as_list<std::size_t>(require(doc, "p_list"), "p_list", as_count);
  c.beta_list = as_list<double>(require(doc, "beta_list"), "beta_list", as_real);
  if (auto it = doc.find("rho_grid"); it != doc.end()) {
    c.rho_grid = as_list<double>(*it, "rho_grid", as_real);
  }
  if (auto it = doc.find("n_runs"); it != doc.end()) c.n_runs = as_count(*it, "n_runs");
  if (auto it = doc.find("procedures"); it != doc.end()) {
    c.procedures = as_list<Procedure>(*it, "procedures", [](const json& v, const std::string& f) {
      if (!v.is_string()) throw ConfigError(f, "expected procedure names");
      auto parsed = procedure_from_string(v.get<std::string>());
      if (!parsed) throw ConfigError(f, "unknown procedure '" + v.get<std::string>() + "'");
      return *parsed;
    });
  }
  if (auto it = doc.find("master_seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) throw ConfigError("master_seed", "expected an unsigned integer");
    c.master_seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("alpha_prime"); it != doc.end()) {
    c.alpha_prime = as_real(*it, "alpha_prime");
  }
  if (auto it = doc.find("delta_prime"); it != doc.end()) {
    c.delta_prime = as_real(*it, "delta_prime");
  }
  if (auto it = doc.find("sigma0"); it != doc.end()) c.sigma0 = as_real(*it, "sigma0");
  if (auto it = doc.find("mu_scale"); it != doc.end()) {
    if (!it->is_string()) throw ConfigError("mu_scale", "expected \"own\" or \"lasso\"");
    const auto name = it->get<std::string>();
    if (name == "own") {
      c.mu_scale = MuScale::own;
    } else if (name == "lasso") {
      c.mu_scale = MuScale::lasso;
    } else {
      throw ConfigError("mu_scale", "expected \"own\" or \"lasso\"");
    }
  }
  check_open_unit(c.alpha_prime, "alpha_prime");
  check_open_unit(c.delta_prime, "delta_prime");
  c.validate();
  return c;
}

std::string to_json(const SweepConfig& c) {
  json procedures = json::array();
  for (Procedure p : c.procedures) procedures.push_back(std::string(to_string(p)));
  json doc = {{"p_list", c.p_list},
              {"beta_list", c.beta_list},
              {"rho_grid", c.rho_grid},
              {"n_runs", c.n_runs},
              {"procedures", procedures},
              {"master_seed", c.master_seed},
              {"alpha_prime", c.alpha_prime},
              {"delta_prime", c.delta_prime},
              {"sigma0", c.sigma0},
              {"mu_scale", std::string(to_string(c.mu_scale))}};
  return doc.dump(2) + "\n";
}

std::variant<SweepConfig, ProblemConfig> parse_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const json doc = parse_json(text);
  if (doc.is_object() && doc.contains("p_list")) return sweep_config_from_json(text);
  return problem_config_from_json(text);
}

std::string describe_derived(const SweepConfig& config) {
  json cells = json::array();
  for (std::size_t p : config.p_list) {
    const DerivedSizes d = derive_sizes(p);
    json eps = json::object();
    for (double beta : config.beta_list) {
      eps[format_double(beta)] = cell_problem(config, p, beta).epsilon;
    }
    cells.push_back({{"p", d.p}, {"k", d.k}, {"s", d.s}, {"n", d.n}, {"epsilon_by_beta", eps}});
  }
  return json{{"derived", cells}}.dump(2) + "\n";
}

std::string to_json(const CalibrationReport& r) {
  json doc = {{"lambda_lasso", r.lambda_lasso},
              {"lambda_group_sq", r.lambda_group_sq},
              {"lambda_linf", r.lambda_linf},
              {"mu_lasso", r.mu_lasso},
              {"mu_group", r.mu_group},
              {"mu_linf", r.mu_linf},
              {"intermediate", r.intermediate},
              {"lasso_large_k_regime", r.lasso_large_k_regime}};
  return doc.dump(2) + "\n";
}

std::string to_json(const LowerBoundReport& r) {
  json doc = {{"mu_min", r.mu_min}, {"u", r.u}, {"valid", r.valid}, {"alpha", r.alpha}};
  return doc.dump(2) + "\n";
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& c : result.cells) {
    out += to_string(c.procedure);
    for (std::size_t v : {c.p, c.k, c.s, c.n}) {
      out += ',';
      out += std::to_string(v);
    }
    out += ',' + format_double(c.beta);
    out += ',' + format_double(c.rho);
    out += ',' + std::to_string(c.n_runs);
    out += ',' + std::to_string(c.n_success);
    out += ',' + format_double(c.p_success);
    out += ',' + format_double(c.ci_low);
    out += ',' + format_double(c.ci_high);
    out += '\n';
  }
  return out;
}

std::vector<CellResult> parse_sweep_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kSweepCsvHeader) {
    throw IoError("sweep CSV: header does not match the expected schema");
  }
  std::vector<CellResult> cells;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split(lines[li], ',');
    if (f.size() != 12) {
      throw IoError("sweep CSV line " + std::to_string(li + 1) + ": expected 12 fields");
    }
    CellResult c;
    auto procedure = procedure_from_string(f[0]);
    if (!procedure) throw IoError("sweep CSV: unknown procedure '" + std::string(f[0]) + "'");
    c.procedure = *procedure;
    c.p = parse_number<std::size_t>(f[1], "p");
    c.k = parse_number<std::size_t>(f[2], "k");
    c.s = parse_number<std::size_t>(f[3], "s");
    c.n = parse_number<std::size_t>(f[4], "n");
    c.beta = parse_number<double>(f[5], "beta");
    c.rho = parse_number<double>(f[6], "rho");
    c.n_runs = parse_number<std::size_t>(f[7], "n_runs");
    c.n_success = parse_number<std::size_t>(f[8], "n_success");
    c.p_success = parse_number<double>(f[9], "p_success");
    c.ci_low = parse_number<double>(f[10], "ci_low");
    c.ci_high = parse_number<double>(f[11], "ci_high");
    cells.push_back(c);
  }
  return cells;
}

std::string matrix_csv(const Matrix& values) {
  std::string out = "row";
  for (std::size_t j = 0; j < values.cols(); ++j) out += ",t" + std::to_string(j);
  out += '\n';
  for (std::size_t i = 0; i < values.rows(); ++i) {
    out += std::to_string(i);
    for (double v : values.row(i)) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

Matrix parse_matrix_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw IoError("matrix CSV: empty input");
  const auto header = split(lines.front(), ',');
  if (header.empty() || header.front() != "row") throw IoError("matrix CSV: header must start with 'row'");
  const std::size_t cols = header.size() - 1;
  if (cols == 0) throw IoError("matrix CSV: no task columns");
  Matrix out(lines.size() - 1, cols);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split(lines[li], ',');
    if (f.size() != cols + 1) {
      throw IoError("matrix CSV line " + std::to_string(li + 1) + ": wrong number of fields");
    }
    if (parse_number<std::size_t>(f[0], "row index") != li - 1) {
      throw IoError("matrix CSV line " + std::to_string(li + 1) + ": rows must be 0..p-1 in order");
    }
    for (std::size_t j = 0; j < cols; ++j) out(li - 1, j) = parse_number<double>(f[j + 1], "value");
  }
  return out;
}

std::string support_csv(const SupportSet& support) {
  std::string out = "row\n";
  for (std::size_t i : support.indices()) out += std::to_string(i) + '\n';
  return out;
}

PlotInput plot_input(const SweepResult& result) {
  return {result.cells, result.mu_reference, result.lower_bound_mu};
}

PlotInput plot_input(std::vector<CellResult> cells, const std::optional<SweepConfig>& config) {
  PlotInput input;
  input.cells = std::move(cells);
  if (!config) return input;
  std::set<std::tuple<int, std::size_t, double>> seen;
  std::set<std::pair<std::size_t, double>> seen_panels;
  for (const auto& c : input.cells) {
    if (seen.insert({static_cast<int>(c.procedure), c.p, c.beta}).second) {
      const ProblemConfig problem = cell_problem(*config, c.p, c.beta);
      try {
        input.mu_reference.push_back(
            {c.procedure, c.p, c.beta, reference_mu(c.procedure, config->mu_scale, problem)});
      } catch (const CalibrationInvalid&) {
        // No reference line for uncalibratable curves.
      }
    }
    if (seen_panels.insert({c.p, c.beta}).second) {
      const ProblemConfig problem = cell_problem(*config, c.p, c.beta);
      input.lower_bound_mu.push_back(
          {c.p, c.beta, mu_lower_bound(problem, config->alpha_prime + config->delta_prime)});
    }
  }
  return input;
}

std::string render_svg(const PlotInput& input) {
  std::vector<std::size_t> ps;
  std::vector<double> betas;
  std::vector<Procedure> procedures;
  double rho_min = 0.0;
  double rho_max = 1.0;
  bool first = true;
  for (const auto& c : input.cells) {
    if (std::find(ps.begin(), ps.end(), c.p) == ps.end()) ps.push_back(c.p);
    if (std::find(betas.begin(), betas.end(), c.beta) == betas.end()) betas.push_back(c.beta);
    if (std::find(procedures.begin(), procedures.end(), c.procedure) == procedures.end()) {
      procedures.push_back(c.procedure);
    }
    rho_min = first ? c.rho : std::min(rho_min, c.rho);
    rho_max = first ? c.rho : std::max(rho_max, c.rho);
    first = false;
  }
  std::sort(ps.begin(), ps.end());
  std::sort(betas.begin(), betas.end());
  if (rho_max <= rho_min) rho_max = rho_min + 1.0;

  constexpr double kPanelW = 320, kPanelH = 240, kLeft = 50, kRight = 15, kTop = 30, kBottom = 40;
  constexpr double kLegendH = 30;
  const double width = std::max<double>(1, betas.size()) * kPanelW;
  const double height = kLegendH + std::max<double>(1, ps.size()) * kPanelH;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(width) << "\" height=\""
      << fixed2(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < procedures.size(); ++i) {
    const double x = 10 + 110.0 * static_cast<double>(i);
    svg << "<line x1=\"" << fixed2(x) << "\" y1=\"15\" x2=\"" << fixed2(x + 20)
        << "\" y2=\"15\" stroke=\"" << procedure_colour(procedures[i])
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed2(x + 25) << "\" y=\"19\">" << to_string(procedures[i])
        << "</text>\n";
  }

  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      const double ox = static_cast<double>(bi) * kPanelW;
      const double oy = kLegendH + static_cast<double>(pi) * kPanelH;
      const double x0 = ox + kLeft, x1 = ox + kPanelW - kRight;
      const double y0 = oy + kPanelH - kBottom, y1 = oy + kTop;
      const auto sx = [&](double rho) { return x0 + (rho - rho_min) / (rho_max - rho_min) * (x1 - x0); };
      const auto sy = [&](double prob) { return y0 - prob * (y0 - y1); };

      svg << "<g>\n";
      svg << "<text x=\"" << fixed2((x0 + x1) / 2) << "\" y=\"" << fixed2(oy + 18)
          << "\" text-anchor=\"middle\">p=" << ps[pi] << ", beta=" << format_double(betas[bi])
          << "</text>\n";
      svg << "<rect x=\"" << fixed2(x0) << "\" y=\"" << fixed2(y1) << "\" width=\""
          << fixed2(x1 - x0) << "\" height=\"" << fixed2(y0 - y1)
          << "\" fill=\"none\" stroke=\"#444\"/>\n";
      for (double tick : {0.0, 0.5, 1.0}) {
        svg << "<text x=\"" << fixed2(x0 - 5) << "\" y=\"" << fixed2(sy(tick) + 4)
            << "\" text-anchor=\"end\">" << format_double(tick) << "</text>\n";
      }
      // Ticks at round multiples of a step chosen for ~4 labels.
      const double span = rho_max - rho_min;
      const double step = span > 2.0 ? 1.0 : span > 1.0 ? 0.5 : span > 0.4 ? 0.2 : 0.1;
      for (double tick = std::ceil(rho_min / step - 1e-9) * step; tick <= rho_max + 1e-9;
           tick += step) {
        svg << "<text x=\"" << fixed2(sx(tick)) << "\" y=\"" << fixed2(y0 + 14)
            << "\" text-anchor=\"middle\">" << format_double(std::round(tick * 1e6) / 1e6)
            << "</text>\n";
      }
      svg << "<text x=\"" << fixed2((x0 + x1) / 2) << "\" y=\"" << fixed2(y0 + 30)
          << "\" text-anchor=\"middle\">rho</text>\n";

      const LowerBoundReference* bound = nullptr;
      for (const auto& l : input.lower_bound_mu) {
        if (l.p == ps[pi] && l.beta == betas[bi]) bound = &l;
      }
      for (Procedure procedure : procedures) {
        std::vector<const CellResult*> pts;
        for (const auto& c : input.cells) {
          if (c.procedure == procedure && c.p == ps[pi] && c.beta == betas[bi]) pts.push_back(&c);
        }
        std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->rho < b->rho; });
        const char* colour = procedure_colour(procedure);
        if (!pts.empty()) {
          svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
          for (std::size_t i = 0; i < pts.size(); ++i) {
            svg << (i ? " " : "") << fixed2(sx(pts[i]->rho)) << ',' << fixed2(sy(pts[i]->p_success));
          }
          svg << "\"/>\n";
          for (const auto* c : pts) {
            svg << "<circle cx=\"" << fixed2(sx(c->rho)) << "\" cy=\"" << fixed2(sy(c->p_success))
                << "\" r=\"2\" fill=\"" << colour << "\"/>\n";
          }
        }
        if (bound && bound->report.valid) {
          for (const auto& m : input.mu_reference) {
            if (m.procedure != procedure || m.p != ps[pi] || m.beta != betas[bi] || !(m.mu > 0)) continue;
            const double rho_bound = bound->report.mu_min / m.mu;
            if (rho_bound < rho_min || rho_bound > rho_max) continue;
            svg << "<line x1=\"" << fixed2(sx(rho_bound)) << "\" y1=\"" << fixed2(y1) << "\" x2=\""
                << fixed2(sx(rho_bound)) << "\" y2=\"" << fixed2(y0) << "\" stroke=\"" << colour
                << "\" stroke-dasharray=\"4,3\"/>\n";
          }
        }
      }
      svg << "</g>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string to_json(const RunManifest& m) {
  json outputs = json::array();
  for (const auto& o : m.outputs) outputs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  json doc = {{"command", m.command},       {"config_digest", m.config_digest},
              {"master_seed", m.master_seed}, {"tool_version", m.tool_version},
              {"started", m.started},       {"finished", m.finished},
              {"outputs", outputs}};
  return doc.dump(2) + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buf.str();
}

RunManifest write_results(const SweepResult& result, const std::filesystem::path& csv_path,
                          const std::optional<std::filesystem::path>& svg_path,
                          const std::string& started) {
  RunManifest manifest;
  manifest.config_digest = sha256_hex(to_json(result.config));
  manifest.master_seed = result.config.master_seed;
  manifest.started = started.empty() ? utc_timestamp() : started;

  const std::string csv = sweep_csv(result);
  write_file_atomic(csv_path, csv);
  manifest.outputs.push_back({csv_path.string(), sha256_hex(csv)});
  if (svg_path) {
    const std::string svg = render_svg(plot_input(result));
    write_file_atomic(*svg_path, svg);
    manifest.outputs.push_back({svg_path->string(), sha256_hex(svg)});
  }
  manifest.finished = utc_timestamp();
  std::filesystem::path manifest_path = csv_path;
  manifest_path += ".manifest.json";
  write_file_atomic(manifest_path, to_json(manifest));
  return manifest;
}

}  // namespace mtsr
