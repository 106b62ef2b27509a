#include "axisym/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "axisym/io.hpp"

namespace axisym {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

struct Ini {
  std::string source;
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

Ini parse_ini(const std::string& text, const std::string& source) {
  Ini ini;
  ini.source = source;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(source, line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(source, line_no, "empty section name");
      ini.sections[section];
      ini.section_lines.emplace(section, line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source, line_no, "expected key = value");
    if (section.empty())
      throw ConfigError(source, line_no, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line_no, "empty key");
    auto [it, inserted] = ini.sections[section].emplace(key, Entry{value, line_no, false});
    if (!inserted)
      throw ConfigError(source, line_no, "duplicate key '" + key + "'");
  }
  return ini;
}

class SectionReader {
 public:
  SectionReader(Ini& ini, const std::string& name, bool required)
      : ini_(ini), name_(name) {
    auto it = ini.sections.find(name);
    if (it == ini.sections.end()) {
      if (required) throw ConfigError(ini.source, 0, "missing section [" + name + "]");
      section_ = nullptr;
    } else {
      section_ = &it->second;
    }
  }

  bool present() const { return section_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    if (!section_) return std::nullopt;
    auto it = section_->find(key);
    if (it == section_->end()) return std::nullopt;
    it->second.used = true;
    last_line_ = it->second.line;
    return it->second.value;
  }

  std::string require_string(const std::string& key) {
    auto v = raw(key);
    if (!v)
      throw ConfigError(ini_.source, section_line(), "missing key '" + key + "' in [" + name_ + "]");
    return *v;
  }

  double require_double(const std::string& key) { return to_double(key, require_string(key)); }

  double get_double(const std::string& key, double fallback) {
    auto v = raw(key);
    return v ? to_double(key, *v) : fallback;
  }

  std::optional<double> optional_double(const std::string& key) {
    auto v = raw(key);
    if (!v) return std::nullopt;
    return to_double(key, *v);
  }

  long long require_int(const std::string& key) { return to_int(key, require_string(key)); }

  long long get_int(const std::string& key, long long fallback) {
    auto v = raw(key);
    return v ? to_int(key, *v) : fallback;
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
    auto v = raw(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const std::uint64_t out = std::stoull(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("");
      return out;
    } catch (const std::exception&) {
      fail(key, "not an unsigned integer");
    }
    return 0;
  }

  std::vector<double> get_double_list(const std::string& key) {
    auto v = raw(key);
    if (!v) return {};
    std::vector<double> out;
    std::istringstream ss(*v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_double(key, trim(tok)));
    if (out.empty()) fail(key, "empty list");
    return out;
  }

  std::vector<int> get_int_list(const std::string& key) {
    auto v = raw(key);
    if (!v) return {};
    std::vector<int> out;
    std::istringstream ss(*v);
    std::string tok;
    while (std::getline(ss, tok, ','))
      out.push_back(static_cast<int>(to_int(key, trim(tok))));
    if (out.empty()) fail(key, "empty list");
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) {
    throw ConfigError(ini_.source, last_line_ ? last_line_ : section_line(),
                      "key '" + key + "': " + message);
  }

  void reject_unknown() {
    if (!section_) return;
    for (const auto& [key, entry] : *section_)
      if (!entry.used)
        throw ConfigError(ini_.source, entry.line,
                          "unknown key '" + key + "' in [" + name_ + "]");
  }

 private:
  int section_line() const {
    auto it = ini_.section_lines.find(name_);
    return it == ini_.section_lines.end() ? 0 : it->second;
  }

  double to_double(const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double out = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("");
      return out;
    } catch (const std::exception&) {
      fail(key, "'" + v + "' is not a number");
    }
  }

  long long to_int(const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const long long out = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("");
      return out;
    } catch (const std::exception&) {
      fail(key, "'" + v + "' is not an integer");
    }
  }

  Ini& ini_;
  std::string name_;
  Section* section_;
  int last_line_ = 0;
};

double lat_deg_to_colat(double lat_deg) { return (90.0 - lat_deg) * kPi / 180.0; }

SpectrumModel parse_model(Ini& ini) {
  SectionReader sec(ini, "model", true);

  const std::string xi_name = sec.require_string("xi");
  std::optional<XiFamily> xi;
  if (xi_name == "legendre_matern") {
    xi = XiFamily::legendre_matern(sec.require_double("tau2"), sec.require_double("nu"));
  } else if (xi_name == "multiquadric") {
    xi = XiFamily::multiquadric(sec.require_double("delta"));
  } else if (xi_name == "custom") {
    auto values = sec.get_double_list("xi_values");
    if (values.empty()) sec.fail("xi_values", "required for xi = custom");
    xi = XiFamily::custom(std::move(values));
  } else {
    sec.fail("xi", "unknown family '" + xi_name + "'");
  }

  const std::string rho_name = sec.require_string("rho");
  std::optional<RhoFamily> rho;
  if (rho_name == "kronecker") {
    rho = RhoFamily::kronecker();
  } else if (rho_name == "exponential") {
    rho = RhoFamily::exponential(sec.require_double("phi"));
  } else {
    sec.fail("rho", "unknown family '" + rho_name + "'");
  }

  const std::string lambda_name = sec.require_string("lambda");
  std::optional<LambdaFamily> lambda;
  if (lambda_name == "indicator") {
    lambda = LambdaFamily::indicator(static_cast<int>(sec.require_int("alpha")));
  } else if (lambda_name == "rational") {
    lambda = LambdaFamily::rational(sec.require_double("gamma"));
  } else if (lambda_name == "ones") {
    lambda = LambdaFamily::ones();
  } else {
    sec.fail("lambda", "unknown family '" + lambda_name + "'");
  }

  const double kappa = sec.get_double("kappa", 0.0);
  sec.reject_unknown();
  return SpectrumModel{*xi, *rho, *lambda, kappa};
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  Ini ini = parse_ini(text, source_name);
  RunConfig config{.model = parse_model(ini)};

  {
    SectionReader sec(ini, "run", true);
    config.run.truncation = static_cast<int>(sec.require_int("truncation"));
    if (config.run.truncation < 0) sec.fail("truncation", "must be >= 0");
    const long long nc = sec.get_int("n_colat", 1), nl = sec.get_int("n_lon", 1);
    if (nc < 1) sec.fail("n_colat", "must be >= 1");
    if (nl < 1) sec.fail("n_lon", "must be >= 1");
    config.run.n_colat = static_cast<std::size_t>(nc);
    config.run.n_lon = static_cast<std::size_t>(nl);
    config.run.seed = sec.get_u64("seed", 0);
    config.run.n_reps = static_cast<int>(sec.get_int("n_reps", 1));
    if (config.run.n_reps < 1) sec.fail("n_reps", "must be >= 1");
    sec.reject_unknown();
  }
  {
    SectionReader sec(ini, "output", false);
    if (sec.present()) {
      if (auto dir = sec.raw("directory")) config.output.directory = *dir;
      if (auto fmt = sec.raw("format")) {
        if (*fmt == "csv")
          config.output.format = OutputFormat::csv;
        else if (*fmt == "binary")
          config.output.format = OutputFormat::binary;
        else
          sec.fail("format", "expected 'csv' or 'binary'");
      }
      sec.reject_unknown();
    }
  }
  {
    SectionReader sec(ini, "covariance", false);
    if (sec.present()) {
      SliceParams& s = config.slice;
      const std::string panel = sec.require_string("panel");
      auto colat_value = [&](const char* rad_key, const char* deg_key,
                             std::optional<double> fallback) -> double {
        auto rad = sec.optional_double(rad_key);
        auto deg = sec.optional_double(deg_key);
        if (rad && deg) sec.fail(rad_key, std::string("conflicts with ") + deg_key);
        if (deg) return lat_deg_to_colat(*deg);
        if (rad) return *rad;
        if (fallback) return *fallback;
        sec.fail(rad_key, "required (or the *_lat_deg variant)");
      };
      if (panel == "l2_dlon") {
        s.panel = SliceParams::Panel::l2_dlon;
        s.l1 = colat_value("l1", "l1_lat_deg", std::nullopt);
        s.l2_min = colat_value("l2_min", "l2_min_lat_deg", s.l1 - 0.2);
        s.l2_max = colat_value("l2_max", "l2_max_lat_deg", s.l1 + 0.2);
        if (s.l2_min > s.l2_max) std::swap(s.l2_min, s.l2_max);
        s.n_l2 = static_cast<std::size_t>(sec.get_int("n_l2", 41));
        s.dlon_min = sec.get_double("dlon_min", -0.2);
        s.dlon_max = sec.get_double("dlon_max", 0.2);
        s.n_dlon = static_cast<std::size_t>(sec.get_int("n_dlon", 41));
      } else if (panel == "l1_l2") {
        s.panel = SliceParams::Panel::l1_l2;
        s.dlon = sec.get_double("dlon", 0.0);
        s.l1_min = colat_value("l1_min", "l1_min_lat_deg", std::nullopt);
        s.l1_max = colat_value("l1_max", "l1_max_lat_deg", std::nullopt);
        if (s.l1_min > s.l1_max) std::swap(s.l1_min, s.l1_max);
        s.n_l1 = static_cast<std::size_t>(sec.get_int("n_l1", 41));
        s.l2_min = colat_value("l2_min", "l2_min_lat_deg", std::nullopt);
        s.l2_max = colat_value("l2_max", "l2_max_lat_deg", std::nullopt);
        if (s.l2_min > s.l2_max) std::swap(s.l2_min, s.l2_max);
        s.n_l2 = static_cast<std::size_t>(sec.get_int("n_l2", 41));
      } else {
        sec.fail("panel", "expected 'l2_dlon' or 'l1_l2'");
      }
      sec.reject_unknown();
    }
  }
  {
    SectionReader sec(ini, "variogram", false);
    if (sec.present()) {
      auto rad = sec.get_double_list("parallels");
      auto deg = sec.get_double_list("parallels_lat_deg");
      if (!rad.empty() && !deg.empty())
        sec.fail("parallels", "conflicts with parallels_lat_deg");
      if (!deg.empty()) {
        rad.clear();
        for (double d : deg) rad.push_back(lat_deg_to_colat(d));
        std::sort(rad.begin(), rad.end());
      }
      if (!rad.empty()) config.variogram.parallels = std::move(rad);
      config.variogram.n_lon =
          static_cast<std::size_t>(sec.get_int("n_lon", static_cast<long long>(config.variogram.n_lon)));
      config.variogram.max_lag = sec.get_double("max_lag", config.variogram.max_lag);
      sec.reject_unknown();
    }
    if (config.variogram.parallels.empty())
      config.variogram.parallels = {kPi / 5.0, 2.0 * kPi / 5.0, 3.0 * kPi / 5.0,
                                    4.0 * kPi / 5.0};
  }
  {
    SectionReader sec(ini, "converge", false);
    if (sec.present()) {
      config.converge.n_ref = static_cast<int>(sec.get_int("n_ref", config.converge.n_ref));
      auto list = sec.get_int_list("truncations");
      if (!list.empty()) config.converge.truncations = std::move(list);
      sec.reject_unknown();
    }
  }
  {
    SectionReader sec(ini, "decay", false);
    if (sec.present()) {
      DecayCertificate cert;
      cert.beta = sec.require_double("beta");
      cert.r = sec.get_double("r", 1.0);
      cert.n0 = static_cast<int>(sec.get_int("n0", 0));
      config.decay = cert;
      sec.reject_unknown();
    }
  }
  {
    // Manifests carry a [provenance] section; its keys are informational.
    SectionReader sec(ini, "provenance", false);
    if (sec.present()) {
      for (const char* key : {"version", "format_version", "command", "grid_layout"})
        sec.raw(key);
      sec.reject_unknown();
    }
  }

  for (const auto& [name, _] : ini.sections) {
    static const char* known[] = {"model",    "run",      "output",     "covariance",
                                  "variogram", "converge", "decay",      "provenance"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return name == k; }) == std::end(known))
      throw ConfigError(ini.source, ini.section_lines.at(name),
                        "unknown section [" + name + "]");
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[model]\n";
  switch (config.model.xi.kind()) {
    case XiFamily::Kind::legendre_matern:
      out << "xi = legendre_matern\n";
      out << "tau2 = " << format_double(config.model.xi.tau2()) << "\n";
      out << "nu = " << format_double(config.model.xi.nu()) << "\n";
      break;
    case XiFamily::Kind::multiquadric:
      out << "xi = multiquadric\n";
      out << "delta = " << format_double(config.model.xi.delta()) << "\n";
      break;
    case XiFamily::Kind::custom: {
      out << "xi = custom\n";
      out << "xi_values = ";
      const auto& vals = config.model.xi.values();
      for (std::size_t i = 0; i < vals.size(); ++i)
        out << (i ? "," : "") << format_double(vals[i]);
      out << "\n";
      break;
    }
  }
  switch (config.model.rho.kind()) {
    case RhoFamily::Kind::kronecker:
      out << "rho = kronecker\n";
      break;
    case RhoFamily::Kind::exponential:
      out << "rho = exponential\n";
      out << "phi = " << format_double(config.model.rho.phi()) << "\n";
      break;
  }
  switch (config.model.lambda.kind()) {
    case LambdaFamily::Kind::indicator:
      out << "lambda = indicator\n";
      out << "alpha = " << config.model.lambda.alpha() << "\n";
      break;
    case LambdaFamily::Kind::rational:
      out << "lambda = rational\n";
      out << "gamma = " << format_double(config.model.lambda.gamma()) << "\n";
      break;
    case LambdaFamily::Kind::ones:
      out << "lambda = ones\n";
      break;
  }
  out << "kappa = " << format_double(config.model.kappa) << "\n";

  out << "\n[run]\n";
  out << "truncation = " << config.run.truncation << "\n";
  out << "n_colat = " << config.run.n_colat << "\n";
  out << "n_lon = " << config.run.n_lon << "\n";
  out << "seed = " << config.run.seed << "\n";
  out << "n_reps = " << config.run.n_reps << "\n";

  out << "\n[output]\n";
  out << "directory = " << config.output.directory << "\n";
  out << "format = " << (config.output.format == OutputFormat::csv ? "csv" : "binary")
      << "\n";

  if (config.decay) {
    out << "\n[decay]\n";
    out << "beta = " << format_double(config.decay->beta) << "\n";
    out << "r = " << format_double(config.decay->r) << "\n";
    out << "n0 = " << config.decay->n0 << "\n";
  }
  return out.str();
}

}  // namespace axisym
