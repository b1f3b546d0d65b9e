#include "heli/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace heli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("bad number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("bad integer: '" + s + "'");
  return static_cast<int>(v);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

}  // namespace

void write_csv(const TimeSeries& ts, const std::string& path) {
  auto f = open_out(path);
  const auto& cols = ts.columns();
  for (std::size_t c = 0; c < cols.size(); ++c)
    f << (c ? "," : "") << cols[c];
  f << "\n";
  const std::size_t n = ts.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      f << (c ? "," : "") << fmt(ts.col(cols[c])[r]);
    f << "\n";
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

TimeSeries read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line))
    throw std::runtime_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
  }
  TimeSeries ts(cols);
  std::vector<double> row(cols.size());
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= row.size())
        throw std::runtime_error("csv row wider than header: " + path);
      row[c++] = parse_double(cell);
    }
    if (c != row.size())
      throw std::runtime_error("csv row narrower than header: " + path);
    ts.push_row(row);
  }
  return ts;
}

void emit_plot_data(const TimeSeries& ts, const std::vector<std::string>& columns,
                    const std::string& path) {
  if (columns.empty())
    throw std::invalid_argument("emit_plot_data: no columns requested");
  std::vector<const std::vector<double>*> ptrs;
  ptrs.reserve(columns.size());
  for (const auto& c : columns) ptrs.push_back(&ts.col(c));  // throws on unknown column

  auto f = open_out(path);
  f << "#";
  for (const auto& c : columns) f << " " << c;
  f << "\n";
  const std::size_t n = ts.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < ptrs.size(); ++c)
      f << (c ? " " : "") << fmt((*ptrs[c])[r]);
    f << "\n";
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

const char* to_word(Integrator v) { return v == Integrator::euler ? "euler" : "rk4"; }
const char* to_word(ObserverMode v) { return v == ObserverMode::asdo ? "asdo" : "asosmo"; }
const char* to_word(RefShape v) { return v == RefShape::cosine ? "cosine" : "sine"; }
const char* to_word(DisturbanceKind v) {
  switch (v) {
    case DisturbanceKind::constant: return "constant";
    case DisturbanceKind::sinusoid: return "sinusoid";
    case DisturbanceKind::tabulated: return "tabulated";
  }
  return "constant";
}

std::string table_to_string(const std::vector<std::pair<double, double>>& table) {
  std::string out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) out += ", ";
    out += fmt(table[i].first) + ":" + fmt(table[i].second);
  }
  return out;
}

std::vector<std::pair<double, double>> parse_table(const std::string& s) {
  std::vector<std::pair<double, double>> table;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto pos = item.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument("table entries must be time:value, got '" + item + "'");
    table.emplace_back(parse_double(trim(item.substr(0, pos))),
                       parse_double(trim(item.substr(pos + 1))));
  }
  return table;
}

void write_disturbance(std::ostream& o, const char* name, const DisturbanceProfile& d) {
  o << name << ".kind = " << to_word(d.kind) << "\n";
  o << name << ".amplitude = " << fmt(d.amplitude) << "\n";
  o << name << ".frequency = " << fmt(d.frequency) << "\n";
  o << name << ".phase = " << fmt(d.phase) << "\n";
  if (!d.table.empty())
    o << name << ".table = " << table_to_string(d.table) << "\n";
}

void write_reference(std::ostream& o, const char* name, const ReferenceProfile& r) {
  o << name << ".shape = " << to_word(r.shape) << "\n";
  o << name << ".offset = " << fmt(r.offset) << "\n";
  o << name << ".amplitude = " << fmt(r.amplitude) << "\n";
  o << name << ".frequency = " << fmt(r.frequency) << "\n";
}

void write_channel(std::ostream& o, const char* name, const ChannelConfig& c) {
  o << name << ".observer = " << to_word(c.observer_mode) << "\n";
  o << name << ".asdo.k1 = " << fmt(c.asdo.k1) << "\n";
  o << name << ".asdo.k2 = " << fmt(c.asdo.k2) << "\n";
  o << name << ".asdo.k3 = " << fmt(c.asdo.k3) << "\n";
  o << name << ".asdo.k4 = " << fmt(c.asdo.k4) << "\n";
  o << name << ".asdo.m = " << fmt(c.asdo.m) << "\n";
  o << name << ".asdo.kappa = " << fmt(c.asdo.kappa) << "\n";
  o << name << ".asdo.eps_d = " << fmt(c.asdo.eps_d) << "\n";
  o << name << ".asdo.Ld0 = " << fmt(c.asdo.Ld0) << "\n";
  o << name << ".fftcf.eps_c = " << fmt(c.fftcf.eps_c) << "\n";
  o << name << ".fftcf.a0 = " << fmt(c.fftcf.a0) << "\n";
  o << name << ".fftcf.a1 = " << fmt(c.fftcf.a1) << "\n";
  o << name << ".fftcf.b0 = " << fmt(c.fftcf.b0) << "\n";
  o << name << ".fftcf.b1 = " << fmt(c.fftcf.b1) << "\n";
  o << name << ".fftcf.gamma3 = " << fmt(c.fftcf.gamma3) << "\n";
  o << name << ".fftcf.gamma4 = " << fmt(c.fftcf.gamma4) << "\n";
  o << name << ".ctrl.kbar1 = " << fmt(c.ctrl.kbar1) << "\n";
  o << name << ".ctrl.kbar2 = " << fmt(c.ctrl.kbar2) << "\n";
  o << name << ".ctrl.s1 = " << fmt(c.ctrl.s1) << "\n";
  o << name << ".ctrl.s2 = " << fmt(c.ctrl.s2) << "\n";
  o << name << ".ctrl.r_num = " << c.ctrl.r.num << "\n";
  o << name << ".ctrl.r_den = " << c.ctrl.r.den << "\n";
  o << name << ".ctrl.l1 = " << fmt(c.ctrl.l1) << "\n";
  o << name << ".ctrl.l2 = " << fmt(c.ctrl.l2) << "\n";
  o << name << ".ctrl.eps_r = " << fmt(c.ctrl.eps_r) << "\n";
  o << name << ".ctrl.sigma_r = " << fmt(c.ctrl.sigma_r) << "\n";
  o << name << ".ctrl.eps_p = " << fmt(c.ctrl.eps_p) << "\n";
  o << name << ".ctrl.sigma_p = " << fmt(c.ctrl.sigma_p) << "\n";
  o << name << ".ctrl.q = " << fmt(c.ctrl.q) << "\n";
  o << name << ".ctrl.mu = " << fmt(c.ctrl.mu) << "\n";
  o << name << ".ctrl.eta = " << fmt(c.ctrl.eta) << "\n";
}

// Returns true when the key belongs to this channel and was applied.
bool apply_channel_key(ChannelConfig& c, const std::string& key, const std::string& value,
                       const std::string& prefix) {
  if (key.rfind(prefix, 0) != 0) return false;
  const std::string k = key.substr(prefix.size());
  if (k == "observer") {
    if (value == "asdo") c.observer_mode = ObserverMode::asdo;
    else if (value == "asosmo") c.observer_mode = ObserverMode::asosmo;
    else throw std::invalid_argument("observer must be asdo or asosmo, got '" + value + "'");
    return true;
  }
  double* dslot = nullptr;
  if (k == "asdo.k1") dslot = &c.asdo.k1;
  else if (k == "asdo.k2") dslot = &c.asdo.k2;
  else if (k == "asdo.k3") dslot = &c.asdo.k3;
  else if (k == "asdo.k4") dslot = &c.asdo.k4;
  else if (k == "asdo.m") dslot = &c.asdo.m;
  else if (k == "asdo.kappa") dslot = &c.asdo.kappa;
  else if (k == "asdo.eps_d") dslot = &c.asdo.eps_d;
  else if (k == "asdo.Ld0") dslot = &c.asdo.Ld0;
  else if (k == "fftcf.eps_c") dslot = &c.fftcf.eps_c;
  else if (k == "fftcf.a0") dslot = &c.fftcf.a0;
  else if (k == "fftcf.a1") dslot = &c.fftcf.a1;
  else if (k == "fftcf.b0") dslot = &c.fftcf.b0;
  else if (k == "fftcf.b1") dslot = &c.fftcf.b1;
  else if (k == "fftcf.gamma3") dslot = &c.fftcf.gamma3;
  else if (k == "fftcf.gamma4") dslot = &c.fftcf.gamma4;
  else if (k == "ctrl.kbar1") dslot = &c.ctrl.kbar1;
  else if (k == "ctrl.kbar2") dslot = &c.ctrl.kbar2;
  else if (k == "ctrl.s1") dslot = &c.ctrl.s1;
  else if (k == "ctrl.s2") dslot = &c.ctrl.s2;
  else if (k == "ctrl.l1") dslot = &c.ctrl.l1;
  else if (k == "ctrl.l2") dslot = &c.ctrl.l2;
  else if (k == "ctrl.eps_r") dslot = &c.ctrl.eps_r;
  else if (k == "ctrl.sigma_r") dslot = &c.ctrl.sigma_r;
  else if (k == "ctrl.eps_p") dslot = &c.ctrl.eps_p;
  else if (k == "ctrl.sigma_p") dslot = &c.ctrl.sigma_p;
  else if (k == "ctrl.q") dslot = &c.ctrl.q;
  else if (k == "ctrl.mu") dslot = &c.ctrl.mu;
  else if (k == "ctrl.eta") dslot = &c.ctrl.eta;
  if (dslot) {
    *dslot = parse_double(value);
    return true;
  }
  if (k == "ctrl.r_num") { c.ctrl.r.num = parse_int(value); return true; }
  if (k == "ctrl.r_den") { c.ctrl.r.den = parse_int(value); return true; }
  throw std::invalid_argument("unknown scenario key: '" + key + "'");
}

bool apply_disturbance_key(DisturbanceProfile& d, const std::string& key,
                           const std::string& value, const std::string& prefix) {
  if (key.rfind(prefix, 0) != 0) return false;
  const std::string k = key.substr(prefix.size());
  if (k == "kind") {
    if (value == "constant") d.kind = DisturbanceKind::constant;
    else if (value == "sinusoid") d.kind = DisturbanceKind::sinusoid;
    else if (value == "tabulated") d.kind = DisturbanceKind::tabulated;
    else throw std::invalid_argument("disturbance kind must be constant, sinusoid or tabulated");
    return true;
  }
  if (k == "amplitude") { d.amplitude = parse_double(value); return true; }
  if (k == "frequency") { d.frequency = parse_double(value); return true; }
  if (k == "phase") { d.phase = parse_double(value); return true; }
  if (k == "table") { d.table = parse_table(value); return true; }
  throw std::invalid_argument("unknown scenario key: '" + key + "'");
}

bool apply_reference_key(ReferenceProfile& r, const std::string& key,
                         const std::string& value, const std::string& prefix) {
  if (key.rfind(prefix, 0) != 0) return false;
  const std::string k = key.substr(prefix.size());
  if (k == "shape") {
    if (value == "cosine") r.shape = RefShape::cosine;
    else if (value == "sine") r.shape = RefShape::sine;
    else throw std::invalid_argument("reference shape must be cosine or sine");
    return true;
  }
  if (k == "offset") { r.offset = parse_double(value); return true; }
  if (k == "amplitude") { r.amplitude = parse_double(value); return true; }
  if (k == "frequency") { r.frequency = parse_double(value); return true; }
  throw std::invalid_argument("unknown scenario key: '" + key + "'");
}

}  // namespace

std::string scenario_to_config(const Scenario& sc) {
  std::ostringstream o;
  o << "# heli3dof scenario\n";
  o << "sim.step = " << fmt(sc.step) << "\n";
  o << "sim.duration = " << fmt(sc.duration) << "\n";
  o << "sim.integrator = " << to_word(sc.integrator) << "\n";
  o << "plant.J_alpha = " << fmt(sc.plant.J_alpha) << "\n";
  o << "plant.J_beta = " << fmt(sc.plant.J_beta) << "\n";
  o << "plant.L_a = " << fmt(sc.plant.L_a) << "\n";
  o << "plant.L_h = " << fmt(sc.plant.L_h) << "\n";
  o << "plant.m_e = " << fmt(sc.plant.m_e) << "\n";
  o << "plant.g = " << fmt(sc.plant.g) << "\n";
  o << "plant.K_f = " << fmt(sc.plant.K_f) << "\n";
  o << "plant.V_max = " << fmt(sc.plant.V_max) << "\n";
  o << "init.x1 = " << fmt(sc.init.x1) << "\n";
  o << "init.x2 = " << fmt(sc.init.x2) << "\n";
  o << "init.x3 = " << fmt(sc.init.x3) << "\n";
  o << "init.x4 = " << fmt(sc.init.x4) << "\n";
  write_reference(o, "ref1", sc.ref1);
  write_reference(o, "ref3", sc.ref3);
  write_disturbance(o, "d1", sc.d1);
  write_disturbance(o, "d2", sc.d2);
  write_channel(o, "elev", sc.elev);
  write_channel(o, "pitch", sc.pitch);
  return o.str();
}

void apply_scenario_key(Scenario& sc, const std::string& key, const std::string& value) {
  if (key == "sim.step") { sc.step = parse_double(value); return; }
  if (key == "sim.duration") { sc.duration = parse_double(value); return; }
  if (key == "sim.integrator") {
    if (value == "euler") sc.integrator = Integrator::euler;
    else if (value == "rk4") sc.integrator = Integrator::rk4;
    else throw std::invalid_argument("integrator must be euler or rk4, got '" + value + "'");
    return;
  }
  double* dslot = nullptr;
  if (key == "plant.J_alpha") dslot = &sc.plant.J_alpha;
  else if (key == "plant.J_beta") dslot = &sc.plant.J_beta;
  else if (key == "plant.L_a") dslot = &sc.plant.L_a;
  else if (key == "plant.L_h") dslot = &sc.plant.L_h;
  else if (key == "plant.m_e") dslot = &sc.plant.m_e;
  else if (key == "plant.g") dslot = &sc.plant.g;
  else if (key == "plant.K_f") dslot = &sc.plant.K_f;
  else if (key == "plant.V_max") dslot = &sc.plant.V_max;
  else if (key == "init.x1") dslot = &sc.init.x1;
  else if (key == "init.x2") dslot = &sc.init.x2;
  else if (key == "init.x3") dslot = &sc.init.x3;
  else if (key == "init.x4") dslot = &sc.init.x4;
  if (dslot) { *dslot = parse_double(value); return; }

  if (apply_reference_key(sc.ref1, key, value, "ref1.")) return;
  if (apply_reference_key(sc.ref3, key, value, "ref3.")) return;
  if (apply_disturbance_key(sc.d1, key, value, "d1.")) return;
  if (apply_disturbance_key(sc.d2, key, value, "d2.")) return;
  if (apply_channel_key(sc.elev, key, value, "elev.")) return;
  if (apply_channel_key(sc.pitch, key, value, "pitch.")) return;
  throw std::invalid_argument("unknown scenario key: '" + key + "'");
}

Scenario parse_scenario_config(const std::string& text) {
  Scenario sc;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
    apply_scenario_key(sc, key, value);
  }
  return sc;
}

void write_scenario(const Scenario& sc, const std::string& path) {
  auto f = open_out(path);
  f << scenario_to_config(sc);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Scenario read_scenario(const std::string& path) {
  return parse_scenario_config(read_file(path));
}

}  // namespace heli
