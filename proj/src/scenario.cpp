#include "auvfl/scenario.hpp"

#include <Eigen/Eigenvalues>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace auvfl::sim {

namespace {

bool exact_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

bool exact_equal(const dynamics::VehicleParams& a,
                 const dynamics::VehicleParams& b) {
  return a.m == b.m && a.I_z == b.I_z && a.x_g == b.x_g && a.X_du == b.X_du &&
         a.Y_dv == b.Y_dv && a.Y_dr == b.Y_dr && a.N_dr == b.N_dr &&
         a.X_u == b.X_u && a.Y_v == b.Y_v && a.Y_r == b.Y_r &&
         a.N_v == b.N_v && a.N_r == b.N_r && a.X_uu == b.X_uu &&
         a.Y_vv == b.Y_vv && a.Y_rv == b.Y_rv && a.Y_vr == b.Y_vr &&
         a.Y_rr == b.Y_rr && a.N_vv == b.N_vv && a.N_rv == b.N_rv &&
         a.N_vr == b.N_vr && a.N_rr == b.N_rr &&
         a.uncertainty_id == b.uncertainty_id;
}

}  // namespace

bool operator==(const SimConfig& a, const SimConfig& b) {
  if (!exact_equal(a.topology.adjacency, b.topology.adjacency)) return false;
  if (!exact_equal(a.leader.A0, b.leader.A0) ||
      !exact_equal(a.leader.chi0, b.leader.chi0)) {
    return false;
  }
  if (a.agents.size() != b.agents.size()) return false;
  for (size_t i = 0; i < a.agents.size(); ++i) {
    const auto& x = a.agents[i];
    const auto& y = b.agents[i];
    if (!exact_equal(x.params, y.params) || !exact_equal(x.eta0, y.eta0) ||
        !exact_equal(x.nu0, y.nu0) || !exact_equal(x.d_star, y.d_star)) {
      return false;
    }
  }
  if (a.observer.beta1 != b.observer.beta1 ||
      a.observer.beta2 != b.observer.beta2) {
    return false;
  }
  if (!exact_equal(a.gains.K1, b.gains.K1) ||
      !exact_equal(a.gains.K2, b.gains.K2) ||
      !exact_equal(a.gains.Gamma, b.gains.Gamma) ||
      !exact_equal(a.gains.sigma, b.gains.sigma)) {
    return false;
  }
  if (a.mode != b.mode || a.weights_prefix != b.weights_prefix ||
      a.warm_start_prefix != b.warm_start_prefix) {
    return false;
  }
  if (a.nn.bounds != b.nn.bounds || a.nn.counts != b.nn.counts ||
      a.nn.width != b.nn.width || a.nn.input != b.nn.input) {
    return false;
  }
  return a.sim.dt == b.sim.dt && a.sim.t_end == b.sim.t_end &&
         a.sim.decimation == b.sim.decimation &&
         a.sim.weight_stride == b.sim.weight_stride &&
         a.sim.skew_c32 == b.sim.skew_c32 && a.sim.seed == b.sim.seed;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int column = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

struct Document {
  std::vector<Entry> top_level;  // currently just `preset`
  std::vector<Section> sections;
};

[[noreturn]] void parse_fail(const std::string& doc_name, int line, int column,
                             const std::string& msg) {
  raise(Errc::ParseError, doc_name + ":" + std::to_string(line) + ":" +
                              std::to_string(column) + ": " + msg);
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Lexes the document into sections of key/value entries.  Values keep their
// raw text; bracketed values may continue across lines until brackets close.
Document lex_document(const std::string& text, const std::string& doc_name) {
  Document doc;
  Section* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool any_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = strip(raw);
    if (line.empty()) continue;
    any_content = true;

    if (line.front() == '[' && line.back() == ']' &&
        line.find('=') == std::string::npos) {
      std::string name = strip(line.substr(1, line.size() - 2));
      if (name.empty()) parse_fail(doc_name, line_no, 1, "empty section name");
      doc.sections.push_back(Section{name, line_no, {}});
      current = &doc.sections.back();
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      parse_fail(doc_name, line_no, 1,
                 "expected `key = value` or `[section]`, got '" + line + "'");
    }
    Entry e;
    e.key = strip(line.substr(0, eq));
    e.value = strip(line.substr(eq + 1));
    e.line = line_no;
    e.column = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (e.key.empty()) parse_fail(doc_name, line_no, 1, "missing key");

    // continue a bracketed value across lines until brackets balance
    auto depth = [](const std::string& s) {
      long d = 0;
      for (char c : s) {
        if (c == '[') ++d;
        if (c == ']') --d;
      }
      return d;
    };
    long d = depth(e.value);
    while (d > 0 && std::getline(in, raw)) {
      ++line_no;
      const size_t h2 = raw.find('#');
      if (h2 != std::string::npos) raw.erase(h2);
      e.value += " " + strip(raw);
      d = depth(e.value);
    }
    if (d != 0) {
      parse_fail(doc_name, e.line, e.column,
                 "unbalanced brackets in value of '" + e.key + "'");
    }

    if (current == nullptr) {
      doc.top_level.push_back(std::move(e));
    } else {
      current->entries.push_back(std::move(e));
    }
  }
  if (!any_content) {
    parse_fail(doc_name, 1, 1, "document has no content");
  }
  return doc;
}

struct EntryCtx {
  const std::string* doc_name;
  const Entry* e;
};

[[noreturn]] void value_fail(const EntryCtx& c, const std::string& msg) {
  parse_fail(*c.doc_name, c.e->line, c.e->column,
             "key '" + c.e->key + "': " + msg);
}

double parse_double(const EntryCtx& c, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE) {
    value_fail(c, "'" + token + "' is not a number");
  }
  return v;
}

double scalar(const EntryCtx& c) { return parse_double(c, c.e->value); }

long integer(const EntryCtx& c) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(c.e->value.c_str(), &end, 10);
  if (end != c.e->value.c_str() + c.e->value.size() || c.e->value.empty() ||
      errno == ERANGE) {
    value_fail(c, "'" + c.e->value + "' is not an integer");
  }
  return v;
}

bool boolean(const EntryCtx& c) {
  if (c.e->value == "true") return true;
  if (c.e->value == "false") return false;
  value_fail(c, "'" + c.e->value + "' is not true/false");
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// `[a b c; d e f]` — rows split on ';', entries on whitespace or commas.
Eigen::MatrixXd matrix(const EntryCtx& c) {
  const std::string& v = c.e->value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    value_fail(c, "expected a bracketed matrix/vector literal");
  }
  const std::string body = v.substr(1, v.size() - 2);
  std::vector<std::vector<double>> rows;
  std::string row_text;
  std::istringstream rs(body);
  while (std::getline(rs, row_text, ';')) {
    const auto tokens = split_ws(row_text);
    if (tokens.empty()) continue;
    rows.emplace_back();
    for (const auto& tk : tokens) rows.back().push_back(parse_double(c, tk));
  }
  if (rows.empty()) value_fail(c, "empty matrix literal");
  const size_t cols = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != cols) value_fail(c, "ragged rows in matrix literal");
  }
  Eigen::MatrixXd m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return m;
}

Eigen::VectorXd vector_of(const EntryCtx& c, Eigen::Index expected) {
  Eigen::MatrixXd m = matrix(c);
  Eigen::VectorXd v;
  if (m.rows() == 1) {
    v = m.row(0).transpose();
  } else if (m.cols() == 1) {
    v = m.col(0);
  } else {
    value_fail(c, "expected a vector, got a " + std::to_string(m.rows()) +
                      "x" + std::to_string(m.cols()) + " matrix");
  }
  if (expected >= 0 && v.size() != expected) {
    raise(Errc::DimensionMismatch,
          "key '" + c.e->key + "' expects " + std::to_string(expected) +
              " entries, got " + std::to_string(v.size()));
  }
  return v;
}

void apply_agent_entry(const EntryCtx& c, AgentConfig& a) {
  static const std::map<std::string, double dynamics::VehicleParams::*>
      param_keys = {
          {"m", &dynamics::VehicleParams::m},
          {"I_z", &dynamics::VehicleParams::I_z},
          {"x_g", &dynamics::VehicleParams::x_g},
          {"X_du", &dynamics::VehicleParams::X_du},
          {"Y_dv", &dynamics::VehicleParams::Y_dv},
          {"Y_dr", &dynamics::VehicleParams::Y_dr},
          {"N_dr", &dynamics::VehicleParams::N_dr},
          {"X_u", &dynamics::VehicleParams::X_u},
          {"Y_v", &dynamics::VehicleParams::Y_v},
          {"Y_r", &dynamics::VehicleParams::Y_r},
          {"N_v", &dynamics::VehicleParams::N_v},
          {"N_r", &dynamics::VehicleParams::N_r},
          {"X_uu", &dynamics::VehicleParams::X_uu},
          {"Y_vv", &dynamics::VehicleParams::Y_vv},
          {"Y_rv", &dynamics::VehicleParams::Y_rv},
          {"Y_vr", &dynamics::VehicleParams::Y_vr},
          {"Y_rr", &dynamics::VehicleParams::Y_rr},
          {"N_vv", &dynamics::VehicleParams::N_vv},
          {"N_rv", &dynamics::VehicleParams::N_rv},
          {"N_vr", &dynamics::VehicleParams::N_vr},
          {"N_rr", &dynamics::VehicleParams::N_rr},
      };
  const std::string& k = c.e->key;
  if (k == "params") {
    a.params = vehicle_preset(c.e->value);
  } else if (k == "uncertainty") {
    a.params.uncertainty_id = static_cast<int>(integer(c));
  } else if (k == "eta0") {
    a.eta0 = vector_of(c, 3);
  } else if (k == "nu0") {
    a.nu0 = vector_of(c, 3);
  } else if (k == "d_star") {
    a.d_star = vector_of(c, 3);
  } else if (auto it = param_keys.find(k); it != param_keys.end()) {
    a.params.*(it->second) = scalar(c);
  } else {
    value_fail(c, "unknown [agent] key");
  }
}

SimConfig build_config(const Document& doc, const std::string& doc_name);

SimConfig resolve_preset_base(const std::string& name) { return preset(name); }

SimConfig build_config(const Document& doc, const std::string& doc_name) {
  SimConfig cfg;
  bool have_base = false;
  for (const auto& e : doc.top_level) {
    EntryCtx c{&doc_name, &e};
    if (e.key == "preset") {
      cfg = resolve_preset_base(e.value);
      have_base = true;
    } else {
      value_fail(c, "unknown top-level key (only `preset` may appear before "
                    "the first section)");
    }
  }

  bool agents_reset = false;
  std::optional<double> leader_amplitude;
  for (const auto& sec : doc.sections) {
    if (sec.name == "topology") {
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        if (e.key == "adjacency") {
          cfg.topology = graph::build_topology(matrix(c));
        } else {
          value_fail(c, "unknown [topology] key");
        }
      }
    } else if (sec.name == "leader") {
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        if (e.key == "A0") {
          Eigen::MatrixXd m = matrix(c);
          if (m.rows() != 6 || m.cols() != 6) {
            raise(Errc::DimensionMismatch, "leader A0 must be 6x6, got " +
                                               std::to_string(m.rows()) + "x" +
                                               std::to_string(m.cols()));
          }
          cfg.leader.A0 = m;
        } else if (e.key == "chi0") {
          cfg.leader.chi0 = vector_of(c, 6);
        } else if (e.key == "amplitude") {
          leader_amplitude = scalar(c);
        } else {
          value_fail(c, "unknown [leader] key");
        }
      }
    } else if (sec.name == "observer") {
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        if (e.key == "beta1") {
          cfg.observer.beta1 = scalar(c);
        } else if (e.key == "beta2") {
          cfg.observer.beta2 = scalar(c);
        } else {
          value_fail(c, "unknown [observer] key");
        }
      }
    } else if (sec.name == "controller") {
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        if (e.key == "mode") {
          if (e.value == "adaptive") {
            cfg.mode = ControllerMode::adaptive;
          } else if (e.value == "pretrained") {
            cfg.mode = ControllerMode::pretrained;
          } else {
            value_fail(c, "mode must be adaptive or pretrained");
          }
        } else if (e.key == "K1") {
          Eigen::MatrixXd m = matrix(c);
          if (m.rows() != 3 || m.cols() != 3) {
            raise(Errc::DimensionMismatch, "K1 must be 3x3");
          }
          cfg.gains.K1 = m;
        } else if (e.key == "K2") {
          Eigen::MatrixXd m = matrix(c);
          if (m.rows() != 3 || m.cols() != 3) {
            raise(Errc::DimensionMismatch, "K2 must be 3x3");
          }
          cfg.gains.K2 = m;
        } else if (e.key == "Gamma") {
          cfg.gains.Gamma = vector_of(c, 3);
        } else if (e.key == "sigma") {
          cfg.gains.sigma = vector_of(c, 3);
        } else if (e.key == "weights_prefix") {
          cfg.weights_prefix = e.value;
        } else if (e.key == "warm_start") {
          cfg.warm_start_prefix = e.value;
        } else {
          value_fail(c, "unknown [controller] key");
        }
      }
    } else if (sec.name == "nn") {
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        if (e.key == "input") {
          if (e.value == "nu") {
            cfg.nn.input = NnInput::nu;
          } else if (e.value == "chi") {
            cfg.nn.input = NnInput::chi;
          } else {
            value_fail(c, "input must be nu or chi");
          }
        } else if (e.key == "bounds") {
          Eigen::MatrixXd m = matrix(c);
          if (m.cols() != 2) {
            raise(Errc::DimensionMismatch,
                  "nn bounds must be q rows of [lo hi]");
          }
          cfg.nn.bounds.clear();
          for (Eigen::Index r = 0; r < m.rows(); ++r) {
            cfg.nn.bounds.push_back({m(r, 0), m(r, 1)});
          }
        } else if (e.key == "counts") {
          Eigen::VectorXd v = vector_of(c, -1);
          cfg.nn.counts.clear();
          for (Eigen::Index r = 0; r < v.size(); ++r) {
            cfg.nn.counts.push_back(static_cast<int>(v(r)));
          }
        } else if (e.key == "width") {
          cfg.nn.width = scalar(c);
        } else {
          value_fail(c, "unknown [nn] key");
        }
      }
    } else if (sec.name == "sim") {
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        if (e.key == "dt") {
          cfg.sim.dt = scalar(c);
        } else if (e.key == "t_end") {
          cfg.sim.t_end = scalar(c);
        } else if (e.key == "decimation") {
          cfg.sim.decimation = static_cast<int>(integer(c));
        } else if (e.key == "weight_stride") {
          cfg.sim.weight_stride = static_cast<int>(integer(c));
        } else if (e.key == "skew_c32") {
          cfg.sim.skew_c32 = boolean(c);
        } else if (e.key == "seed") {
          cfg.sim.seed = static_cast<int>(integer(c));
        } else {
          value_fail(c, "unknown [sim] key");
        }
      }
    } else if (sec.name == "agent") {
      if (have_base && !agents_reset) {
        cfg.agents.clear();  // explicit agent sections replace preset agents
      }
      agents_reset = true;
      cfg.agents.emplace_back();
      for (const auto& e : sec.entries) {
        EntryCtx c{&doc_name, &e};
        apply_agent_entry(c, cfg.agents.back());
      }
    } else {
      parse_fail(doc_name, sec.line, 1, "unknown section [" + sec.name + "]");
    }
  }

  if (leader_amplitude) {
    cfg.leader = dynamics::default_leader(*leader_amplitude);
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace

SimConfig parse_scenario_text(const std::string& text,
                              const std::string& display_name) {
  return build_config(lex_document(text, display_name), display_name);
}

SimConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoError, "cannot open scenario '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_scenario_text(text, path);
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_literal(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += num(m(i, j));
    }
  }
  out += "]";
  return out;
}

std::string vector_literal(const Eigen::VectorXd& v) {
  return matrix_literal(v.transpose());
}

}  // namespace

std::string serialize_scenario(const SimConfig& cfg) {
  std::ostringstream o;
  o << "[topology]\n";
  o << "adjacency = " << matrix_literal(cfg.topology.adjacency) << "\n\n";

  o << "[leader]\n";
  o << "A0 = " << matrix_literal(cfg.leader.A0) << "\n";
  o << "chi0 = " << vector_literal(cfg.leader.chi0) << "\n\n";

  o << "[observer]\n";
  o << "beta1 = " << num(cfg.observer.beta1) << "\n";
  o << "beta2 = " << num(cfg.observer.beta2) << "\n\n";

  o << "[controller]\n";
  o << "mode = "
    << (cfg.mode == ControllerMode::adaptive ? "adaptive" : "pretrained")
    << "\n";
  o << "K1 = " << matrix_literal(cfg.gains.K1) << "\n";
  o << "K2 = " << matrix_literal(cfg.gains.K2) << "\n";
  o << "Gamma = " << vector_literal(cfg.gains.Gamma) << "\n";
  o << "sigma = " << vector_literal(cfg.gains.sigma) << "\n";
  if (!cfg.weights_prefix.empty()) {
    o << "weights_prefix = " << cfg.weights_prefix << "\n";
  }
  if (!cfg.warm_start_prefix.empty()) {
    o << "warm_start = " << cfg.warm_start_prefix << "\n";
  }
  o << "\n[nn]\n";
  o << "input = " << (cfg.nn.input == NnInput::nu ? "nu" : "chi") << "\n";
  Eigen::MatrixXd b(cfg.nn.bounds.size(), 2);
  for (size_t r = 0; r < cfg.nn.bounds.size(); ++r) {
    b(static_cast<Eigen::Index>(r), 0) = cfg.nn.bounds[r][0];
    b(static_cast<Eigen::Index>(r), 1) = cfg.nn.bounds[r][1];
  }
  o << "bounds = " << matrix_literal(b) << "\n";
  Eigen::VectorXd cnt(cfg.nn.counts.size());
  for (size_t r = 0; r < cfg.nn.counts.size(); ++r) {
    cnt(static_cast<Eigen::Index>(r)) = cfg.nn.counts[r];
  }
  o << "counts = " << vector_literal(cnt) << "\n";
  o << "width = " << num(cfg.nn.width) << "\n";

  o << "\n[sim]\n";
  o << "dt = " << num(cfg.sim.dt) << "\n";
  o << "t_end = " << num(cfg.sim.t_end) << "\n";
  o << "decimation = " << cfg.sim.decimation << "\n";
  o << "weight_stride = " << cfg.sim.weight_stride << "\n";
  o << "skew_c32 = " << (cfg.sim.skew_c32 ? "true" : "false") << "\n";
  o << "seed = " << cfg.sim.seed << "\n";

  for (const auto& a : cfg.agents) {
    const auto& p = a.params;
    o << "\n[agent]\n";
    o << "m = " << num(p.m) << "\n";
    o << "I_z = " << num(p.I_z) << "\n";
    o << "x_g = " << num(p.x_g) << "\n";
    o << "X_du = " << num(p.X_du) << "\n";
    o << "Y_dv = " << num(p.Y_dv) << "\n";
    o << "Y_dr = " << num(p.Y_dr) << "\n";
    o << "N_dr = " << num(p.N_dr) << "\n";
    o << "X_u = " << num(p.X_u) << "\n";
    o << "Y_v = " << num(p.Y_v) << "\n";
    o << "Y_r = " << num(p.Y_r) << "\n";
    o << "N_v = " << num(p.N_v) << "\n";
    o << "N_r = " << num(p.N_r) << "\n";
    o << "X_uu = " << num(p.X_uu) << "\n";
    o << "Y_vv = " << num(p.Y_vv) << "\n";
    o << "Y_rv = " << num(p.Y_rv) << "\n";
    o << "Y_vr = " << num(p.Y_vr) << "\n";
    o << "Y_rr = " << num(p.Y_rr) << "\n";
    o << "N_vv = " << num(p.N_vv) << "\n";
    o << "N_rv = " << num(p.N_rv) << "\n";
    o << "N_vr = " << num(p.N_vr) << "\n";
    o << "N_rr = " << num(p.N_rr) << "\n";
    o << "uncertainty = " << p.uncertainty_id << "\n";
    o << "eta0 = " << vector_literal(a.eta0) << "\n";
    o << "nu0 = " << vector_literal(a.nu0) << "\n";
    o << "d_star = " << vector_literal(a.d_star) << "\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// validation

std::vector<std::string> validate_config(const SimConfig& cfg) {
  std::vector<std::string> warnings;
  if (cfg.agents.empty()) {
    raise(Errc::ValidationError, "scenario defines no agents");
  }
  if (cfg.topology.adjacency.rows() !=
      static_cast<Eigen::Index>(cfg.agents.size()) + 1) {
    raise(Errc::DimensionMismatch,
          "topology is " + std::to_string(cfg.topology.adjacency.rows()) +
              "x" + std::to_string(cfg.topology.adjacency.cols()) + " but " +
              std::to_string(cfg.agents.size()) +
              " agents need " + std::to_string(cfg.agents.size() + 1) +
              " nodes");
  }
  if (!(cfg.observer.beta1 > 0.0) || !(cfg.observer.beta2 > 0.0)) {
    raise(Errc::ValidationError, "observer beta1/beta2 must be positive");
  }
  controller::validate_gains(cfg.gains);
  if (cfg.nn.bounds.size() != cfg.nn.counts.size() || cfg.nn.bounds.empty()) {
    raise(Errc::ValidationError, "nn bounds/counts must align");
  }
  const int want_dim = cfg.nn.input == NnInput::nu ? 3 : 6;
  if (cfg.nn.dim() != want_dim) {
    raise(Errc::DimensionMismatch,
          std::string("nn grid is ") + std::to_string(cfg.nn.dim()) +
              "-D but input=" + (cfg.nn.input == NnInput::nu ? "nu" : "chi") +
              " needs " + std::to_string(want_dim) + "-D");
  }
  for (size_t a = 0; a < cfg.nn.bounds.size(); ++a) {
    if (cfg.nn.counts[a] < 2) {
      raise(Errc::ValidationError, "nn counts must be >= 2 per axis");
    }
    if (!(cfg.nn.bounds[a][0] < cfg.nn.bounds[a][1])) {
      raise(Errc::ValidationError, "nn bounds must satisfy lo < hi");
    }
  }
  if (!(cfg.nn.width > 0.0)) {
    raise(Errc::ValidationError, "nn width must be positive");
  }
  if (!(cfg.sim.dt > 0.0)) {
    raise(Errc::ValidationError, "sim dt must be positive");
  }
  if (cfg.sim.t_end < 0.0) {
    raise(Errc::ValidationError, "sim t_end must be >= 0");
  }
  if (cfg.sim.decimation < 1 || cfg.sim.weight_stride < 1) {
    raise(Errc::ValidationError,
          "sim decimation and weight_stride must be >= 1");
  }
  if (cfg.mode == ControllerMode::pretrained &&
      !cfg.warm_start_prefix.empty()) {
    raise(Errc::ValidationError,
          "warm_start only makes sense in adaptive mode; pretrained runs "
          "take their weights from weights_prefix");
  }
  if (cfg.mode == ControllerMode::pretrained && cfg.weights_prefix.empty()) {
    raise(Errc::ValidationError,
          "pretrained mode needs controller weights_prefix");
  }
  for (size_t i = 0; i < cfg.agents.size(); ++i) {
    dynamics::mass_matrix(cfg.agents[i].params);  // throws if not SPD
    const int id = cfg.agents[i].params.uncertainty_id;
    if (id < 1 || id > 5) {
      raise(Errc::UnknownUncertaintyId,
            "agent " + std::to_string(i + 1) + " uncertainty id " +
                std::to_string(id));
    }
  }

  if (!graph::has_leader_rooted_spanning_tree(cfg.topology)) {
    warnings.push_back(
        "topology has no leader-rooted spanning tree; the estimator will not "
        "converge");
  }
  if (!controller::gain_relation_satisfied(cfg.gains)) {
    warnings.push_back(
        "gain relation lambda_min(K2) > 2 lambda_max(K1) violated; "
        "convergence bound from the stability analysis does not apply");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(cfg.leader.A0);
  if (es.eigenvalues().real().cwiseAbs().maxCoeff() > 1e-9) {
    warnings.push_back(
        "leader A0 has eigenvalues off the imaginary axis; reference "
        "trajectories will grow or decay");
  }
  return warnings;
}

}  // namespace auvfl::sim
