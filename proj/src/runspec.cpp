#include "floq/runspec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "floq/dense.hpp"

namespace floq {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError(key + ": expected a number, got '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError(key + ": expected an integer, got '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

void parse_initial_state(const std::string& v, InitialState& st, const std::string& key) {
  if (v == "neel") {
    st.kind = InitialState::Kind::neel;
    return;
  }
  if (v == "random-product") {
    st.kind = InitialState::Kind::random_product;
    return;
  }
  const auto open = v.find('(');
  if (open != std::string::npos && v.back() == ')') {
    const std::string name = v.substr(0, open);
    const std::string arg = v.substr(open + 1, v.size() - open - 2);
    if (name == "random-product") {
      st.kind = InitialState::Kind::random_product;
      st.seed = static_cast<std::uint64_t>(parse_int(key, arg));
      return;
    }
    if (name == "d0-eigenstate") {
      st.kind = InitialState::Kind::d0_eigenstate;
      st.eigenstate_index = static_cast<int>(parse_int(key, arg));
      return;
    }
    if (name == "basis") {
      st.kind = InitialState::Kind::basis;
      st.bitstring = arg;
      if (arg.find_first_not_of("01") != std::string::npos || arg.empty()) {
        throw ValidationError(key + ": basis bitstring must be nonempty 0/1");
      }
      return;
    }
  }
  throw ValidationError(key + ": unknown initial state '" + v + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::evolve: return "evolve";
    case RunMode::symmetry_check: return "symmetry-check";
    case RunMode::vanvleck_verify: return "vanvleck-verify";
    default: return "sweep";
  }
}

RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  bool omega_set = false, jow_set = false;
  double j_over_omega = 0.0;

  std::string section;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError("malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "run" && section != "krylov") {
        throw ValidationError("unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string path = section.empty() ? key : section + "." + key;
    if (section.empty()) throw ValidationError(path + ": key outside any section");

    if (section == "model") {
      auto& c = spec.config;
      if (key == "L") c.L = static_cast<int>(parse_int(path, value));
      else if (key == "omega") { c.omega = parse_double(path, value); omega_set = true; }
      else if (key == "j_over_omega") { j_over_omega = parse_double(path, value); jow_set = true; }
      else if (key == "tau") c.tau = parse_double(path, value);
      else if (key == "j") c.j = parse_double(path, value);
      else if (key == "g_x") c.g_x = parse_double(path, value);
      else if (key == "g_y") c.g_y = parse_double(path, value);
      else if (key == "g_z") c.g_z = parse_double(path, value);
      else if (key == "g_zz") c.g_zz = parse_double(path, value);
      else if (key == "lambda_a") c.lambda_a = parse_double(path, value);
      else if (key == "lambda_b") c.lambda_b = parse_double(path, value);
      else throw ValidationError("unknown key " + path);
    } else if (section == "run") {
      if (key == "mode") {
        if (value == "evolve") spec.mode = RunMode::evolve;
        else if (value == "symmetry-check") spec.mode = RunMode::symmetry_check;
        else if (value == "vanvleck-verify") spec.mode = RunMode::vanvleck_verify;
        else if (value == "sweep") spec.mode = RunMode::sweep;
        else throw ValidationError(path + ": unknown mode '" + value + "'");
      } else if (key == "n_periods") {
        spec.n_periods = static_cast<int>(parse_int(path, value));
      } else if (key == "initial_state") {
        parse_initial_state(value, spec.initial_state, path);
      } else if (key == "seed") {
        spec.initial_state.seed = static_cast<std::uint64_t>(parse_int(path, value));
      } else if (key == "output_path") {
        spec.output_path = value;
      } else if (key == "sample_offsets") {
        spec.sample_offsets.clear();
        for (const auto& tok : split(value, ',')) {
          if (!tok.empty()) spec.sample_offsets.push_back(parse_double(path, tok));
        }
      } else if (key == "vanvleck_order") {
        spec.vanvleck_order = static_cast<int>(parse_int(path, value));
      } else if (key == "lambda_grid") {
        spec.lambda_grid.clear();
        for (const auto& pair_tok : split(value, ';')) {
          if (pair_tok.empty()) continue;
          const auto pair = split(pair_tok, ',');
          if (pair.size() != 2) {
            throw ValidationError(path + ": expected 'a,b' pairs separated by ';'");
          }
          spec.lambda_grid.emplace_back(parse_double(path, pair[0]),
                                        parse_double(path, pair[1]));
        }
      } else {
        throw ValidationError("unknown key " + path);
      }
    } else {  // krylov
      if (key == "max_subspace") spec.krylov.max_subspace = static_cast<int>(parse_int(path, value));
      else if (key == "tolerance") spec.krylov.tolerance = parse_double(path, value);
      else if (key == "max_substep") spec.krylov.max_substep = parse_double(path, value);
      else throw ValidationError("unknown key " + path);
    }
  }

  if (jow_set) {
    if (omega_set) throw ValidationError("model.j_over_omega: conflicts with model.omega");
    if (!(j_over_omega > 0.0)) throw ValidationError("model.j_over_omega: must be positive");
    spec.config.omega = spec.config.j / j_over_omega;
  }

  try {
    spec.config.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  if (spec.n_periods < 1) throw ValidationError("run.n_periods: must be >= 1");
  if (spec.krylov.max_subspace < 2) throw ValidationError("krylov.max_subspace: must be >= 2");
  if (!(spec.krylov.tolerance > 0.0)) throw ValidationError("krylov.tolerance: must be positive");
  if (!(spec.krylov.max_substep > 0.0)) throw ValidationError("krylov.max_substep: must be positive");
  if (!std::is_sorted(spec.sample_offsets.begin(), spec.sample_offsets.end())) {
    throw ValidationError("run.sample_offsets: must be sorted");
  }
  for (double s : spec.sample_offsets) {
    if (s < 0.0 || s >= 1.0) {
      throw ValidationError("run.sample_offsets: offsets are fractions of T in [0, 1)");
    }
  }
  if (spec.initial_state.kind == InitialState::Kind::basis &&
      static_cast<int>(spec.initial_state.bitstring.size()) != spec.config.n_sites()) {
    throw ValidationError("run.initial_state: basis bitstring length must equal 2L");
  }
  if (spec.mode == RunMode::sweep && spec.lambda_grid.empty()) {
    throw ValidationError("run.lambda_grid: sweep mode needs at least one pair");
  }
  if (spec.vanvleck_order < 0 || spec.vanvleck_order > 2) {
    throw ValidationError("run.vanvleck_order: must be 0, 1 or 2");
  }
  return spec;
}

std::string emit_config(const RunSpec& spec) {
  std::ostringstream os;
  const auto& c = spec.config;
  os << "[model]\n";
  os << "L = " << c.L << "\n";
  os << "omega = " << format_double(c.omega) << "\n";
  os << "tau = " << format_double(c.tau) << "\n";
  os << "j = " << format_double(c.j) << "\n";
  os << "g_x = " << format_double(c.g_x) << "\n";
  os << "g_y = " << format_double(c.g_y) << "\n";
  os << "g_z = " << format_double(c.g_z) << "\n";
  os << "g_zz = " << format_double(c.g_zz) << "\n";
  os << "lambda_a = " << format_double(c.lambda_a) << "\n";
  os << "lambda_b = " << format_double(c.lambda_b) << "\n";
  os << "\n[run]\n";
  os << "mode = " << run_mode_name(spec.mode) << "\n";
  os << "n_periods = " << spec.n_periods << "\n";
  switch (spec.initial_state.kind) {
    case InitialState::Kind::neel:
      os << "initial_state = neel\n";
      break;
    case InitialState::Kind::random_product:
      os << "initial_state = random-product(" << spec.initial_state.seed << ")\n";
      break;
    case InitialState::Kind::d0_eigenstate:
      os << "initial_state = d0-eigenstate(" << spec.initial_state.eigenstate_index << ")\n";
      break;
    case InitialState::Kind::basis:
      os << "initial_state = basis(" << spec.initial_state.bitstring << ")\n";
      break;
  }
  os << "seed = " << spec.initial_state.seed << "\n";
  os << "output_path = " << spec.output_path << "\n";
  os << "sample_offsets = ";
  for (std::size_t i = 0; i < spec.sample_offsets.size(); ++i) {
    os << (i ? ", " : "") << format_double(spec.sample_offsets[i]);
  }
  os << "\n";
  os << "vanvleck_order = " << spec.vanvleck_order << "\n";
  if (!spec.lambda_grid.empty()) {
    os << "lambda_grid = ";
    for (std::size_t i = 0; i < spec.lambda_grid.size(); ++i) {
      os << (i ? "; " : "") << format_double(spec.lambda_grid[i].first) << ","
         << format_double(spec.lambda_grid[i].second);
    }
    os << "\n";
  }
  os << "\n[krylov]\n";
  os << "max_subspace = " << spec.krylov.max_subspace << "\n";
  os << "tolerance = " << format_double(spec.krylov.tolerance) << "\n";
  os << "max_substep = " << format_double(spec.krylov.max_substep) << "\n";
  return os.str();
}

StateVector build_initial_state(const RunSpec& spec) {
  const auto& cfg = spec.config;
  const int n = cfg.n_sites();
  switch (spec.initial_state.kind) {
    case InitialState::Kind::neel: {
      std::uint64_t index = 0;
      for (int i = 0; i < cfg.L; ++i) {
        for (int c = 0; c < 2; ++c) {
          if ((i + c) % 2 == 1) index |= std::uint64_t{1} << (2 * i + c);
        }
      }
      return StateVector::basis(n, index);
    }
    case InitialState::Kind::basis: {
      std::uint64_t index = 0;
      const auto& bits = spec.initial_state.bitstring;
      for (int q = 0; q < n; ++q) {
        if (bits[q] == '1') index |= std::uint64_t{1} << q;
      }
      return StateVector::basis(n, index);
    }
    case InitialState::Kind::d0_eigenstate: {
      const int k = spec.initial_state.eigenstate_index;
      HermitianEig eig(closed_form_d0(cfg).to_dense());
      if (k < 0 || k >= eig.eigenvalues().size()) {
        throw ValidationError("d0 eigenstate index out of range");
      }
      return StateVector::from_eigen(n, eig.eigenvectors().col(k));
    }
    case InitialState::Kind::random_product:
    default: {
      std::mt19937_64 gen(spec.initial_state.seed);
      auto uniform = [&gen]() { return (gen() >> 11) * 0x1.0p-53; };
      std::vector<cx> amps{cx{1.0, 0.0}};
      for (int q = 0; q < n; ++q) {
        const double theta = std::acos(1.0 - 2.0 * uniform());
        const double phi = 2.0 * std::numbers::pi * uniform();
        const cx a0{std::cos(theta / 2.0), 0.0};
        const cx a1 = std::exp(cx{0.0, phi}) * std::sin(theta / 2.0);
        std::vector<cx> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
          next[i] = amps[i] * a0;
          next[i + amps.size()] = amps[i] * a1;
        }
        amps = std::move(next);
      }
      auto psi = StateVector::from_amplitudes(n, std::move(amps));
      psi.normalize();
      return psi;
    }
  }
}

}  // namespace floq
