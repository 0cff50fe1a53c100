#include "spatent/config_file.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "spatent/errors.hpp"

namespace spatent {
namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.contains(key); }

  std::optional<double> number(const std::string& key)
  {
    const auto* e = take(key);
    if (e == nullptr) {
      return std::nullopt;
    }
    // strtod accepts exponents and leading '+'; reject trailing garbage.
    const char* begin = e->value.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
      fail(*e, key, "expected a finite number");
    }
    return v;
  }

  std::optional<std::size_t> count(const std::string& key)
  {
    const auto* e = take(key);
    if (e == nullptr) {
      return std::nullopt;
    }
    std::size_t v = 0;
    const auto* first = e->value.data();
    const auto* last = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      fail(*e, key, "expected a non-negative integer");
    }
    return v;
  }

  std::optional<bool> boolean(const std::string& key)
  {
    const auto* e = take(key);
    if (e == nullptr) {
      return std::nullopt;
    }
    if (e->value == "true") {
      return true;
    }
    if (e->value == "false") {
      return false;
    }
    fail(*e, key, "expected true or false");
  }

  std::optional<std::string> text(const std::string& key)
  {
    const auto* e = take(key);
    return e == nullptr ? std::nullopt : std::optional<std::string>(e->value);
  }

  int line(const std::string& key) const
  {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void reject_unused() const
  {
    for (const auto& [key, e] : entries_) {
      if (!used_.contains(key)) {
        throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + key + "'");
      }
    }
  }

  [[noreturn]] static void fail(const Entry& e, const std::string& key, const std::string& what)
  {
    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": " + what + ", got '" + e.value + "'");
  }

private:
  const Entry* take(const std::string& key)
  {
    used_.insert(key);
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

OutputSet parse_outputs(const std::string& list, int line)
{
  OutputSet out{false, false, false, false};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto name = trim(item);
    if (name == "spectrum") {
      out.spectrum = true;
    } else if (name == "spiral") {
      out.spiral = true;
    } else if (name == "report") {
      out.report = true;
    } else if (name == "kernel_heatmap") {
      out.kernel_heatmap = true;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": output.files: unknown output '" + std::string(name) + "'");
    }
  }
  return out;
}

std::string output_list(const OutputSet& o)
{
  std::vector<std::string> names;
  if (o.spectrum) {
    names.emplace_back("spectrum");
  }
  if (o.spiral) {
    names.emplace_back("spiral");
  }
  if (o.report) {
    names.emplace_back("report");
  }
  if (o.kernel_heatmap) {
    names.emplace_back("kernel_heatmap");
  }
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    s += (i ? "," : "") + names[i];
  }
  return s;
}

}  // namespace

std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunRequest parse_config(std::string_view text)
{
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  Reader r(std::move(entries));
  RunRequest req;
  CrystalPumpConfig::Params p;
  p.length_um = r.number("crystal.length_um").value_or(p.length_um);
  p.n_e = r.number("crystal.n_e").value_or(p.n_e);
  p.lambda_p_um = r.number("pump.wavelength_um").value_or(p.lambda_p_um);
  p.waist_um = r.number("pump.waist_um").value_or(p.waist_um);
  if (const auto conv = r.text("pump.waist_convention")) {
    const auto parsed = waist_convention_from_string(*conv);
    if (!parsed) {
      throw ConfigError("line " + std::to_string(r.line("pump.waist_convention"))
                        + ": pump.waist_convention must be field or rms");
    }
    p.convention = *parsed;
  }

  const bool has_alpha = r.has("grating.alpha_per_um2");
  const bool has_in = r.has("grating.period_in_um");
  const bool has_out = r.has("grating.period_out_um");
  if (has_alpha && (has_in || has_out)) {
    throw ConfigError("line " + std::to_string(r.line("grating.alpha_per_um2"))
                      + ": grating.alpha_per_um2 conflicts with grating.period_in_um/period_out_um");
  }
  if (has_in != has_out) {
    throw ConfigError("grating.period_in_um and grating.period_out_um must be given together");
  }
  if (has_alpha) {
    p.alpha_per_um2 = *r.number("grating.alpha_per_um2");
  }
  if (has_in) {
    const GratingPeriods g{*r.number("grating.period_in_um"), *r.number("grating.period_out_um")};
    if (!(g.in_um > 0.0) || !(g.out_um > 0.0)) {
      throw ConfigError("grating periods must be positive");
    }
    if (!(p.length_um > 0.0)) {
      throw ConfigError("crystal.length_um must be positive");
    }
    p.alpha_per_um2 = chirp_from_periods({g.in_um, g.out_um, p.length_um});
    p.grating_k0_per_um = 2.0 * std::numbers::pi / g.in_um;
    req.periods = g;
  }
  req.cfg = CrystalPumpConfig::make(p);

  req.grid.p_max = r.number("grid.p_max_per_um");
  req.grid.n_radial = r.count("grid.n_radial");
  req.grid.n_phi = r.count("grid.n_phi");
  req.grid.eps_mode = r.number("truncation.eps_mode").value_or(req.grid.eps_mode);
  req.grid.eps_tail = r.number("truncation.eps_tail").value_or(req.grid.eps_tail);

  req.compute.convergence_gate = r.boolean("gate.enabled").value_or(req.compute.convergence_gate);
  if (const auto m = r.count("gate.max_refinements")) {
    if (*m < 1 || *m > 4) {
      throw ConfigError("gate.max_refinements must lie in [1, 4]");
    }
    req.compute.max_refinements = static_cast<int>(*m);
  }
  req.compute.gate_tolerance = r.number("gate.tolerance").value_or(req.compute.gate_tolerance);
  if (!(req.compute.gate_tolerance > 0.0)) {
    throw ConfigError("gate.tolerance must be positive");
  }
  if (const auto mb = r.count("compute.memory_budget_mb")) {
    if (*mb == 0) {
      throw ConfigError("compute.memory_budget_mb must be positive");
    }
    req.compute.memory_budget_bytes = *mb << 20;
  }
  req.compute.pump_cut = r.number("compute.pump_cut").value_or(req.compute.pump_cut);
  if (!(req.compute.pump_cut >= 10.0)) {
    throw ConfigError("compute.pump_cut must be at least 10");
  }
  req.compute.correlated_area = r.boolean("correlated_area.enabled").value_or(true);
  req.compute.conditioning_q = r.number("correlated_area.q_per_um");
  if (req.compute.conditioning_q && !(*req.compute.conditioning_q > 0.0)) {
    throw ConfigError("correlated_area.q_per_um must be positive");
  }
  req.compute.conditioning_phi = r.number("correlated_area.phi_q_rad").value_or(0.0);

  if (const auto files = r.text("output.files")) {
    req.outputs = parse_outputs(*files, r.line("output.files"));
  }
  req.heatmap_floor = r.number("output.heatmap_floor").value_or(req.heatmap_floor);
  if (!(req.heatmap_floor >= 0.0 && req.heatmap_floor < 1.0)) {
    throw ConfigError("output.heatmap_floor must lie in [0, 1)");
  }

  r.reject_unused();
  resolve_grid(req.cfg, req.grid);
  return req;
}

RunRequest load_config(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read config file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading " + path.string());
  }
  return parse_config(ss.str());
}

std::string format_config(const RunRequest& req)
{
  const auto& c = req.cfg;
  const ResolvedGrid g = resolve_grid(c, req.grid);
  std::ostringstream out;
  auto kv = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  kv("crystal.length_um", format_double(c.length()));
  kv("crystal.n_e", format_double(c.n_e()));
  kv("pump.wavelength_um", format_double(c.lambda_p()));
  kv("pump.waist_um", format_double(c.waist()));
  kv("pump.waist_convention", to_string(c.convention()));
  if (req.periods) {
    kv("grating.period_in_um", format_double(req.periods->in_um));
    kv("grating.period_out_um", format_double(req.periods->out_um));
  } else {
    kv("grating.alpha_per_um2", format_double(c.alpha()));
  }
  kv("grid.p_max_per_um", format_double(g.p_max));
  kv("grid.n_radial", std::to_string(g.n_radial));
  kv("grid.n_phi", std::to_string(g.n_phi));
  kv("truncation.eps_mode", format_double(req.grid.eps_mode));
  kv("truncation.eps_tail", format_double(req.grid.eps_tail));
  kv("gate.enabled", req.compute.convergence_gate ? "true" : "false");
  kv("gate.max_refinements", std::to_string(req.compute.max_refinements));
  kv("gate.tolerance", format_double(req.compute.gate_tolerance));
  kv("compute.memory_budget_mb", std::to_string(req.compute.memory_budget_bytes >> 20));
  kv("compute.pump_cut", format_double(req.compute.pump_cut));
  kv("correlated_area.enabled", req.compute.correlated_area ? "true" : "false");
  kv("correlated_area.q_per_um", format_double(req.compute.conditioning_q.value_or(default_conditioning_radius(c))));
  kv("correlated_area.phi_q_rad", format_double(req.compute.conditioning_phi));
  kv("output.files", output_list(req.outputs));
  kv("output.heatmap_floor", format_double(req.heatmap_floor));
  return out.str();
}

}  // namespace spatent
