#include "spinebal/trace_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kDigits = 17;

std::string Header() {
  std::string h;
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    if (i) h += ',';
    h += kTraceColumns[i];
  }
  return h;
}

std::array<double, 13> Fields(const TraceRow& r) {
  return {r.t,  r.l_f, r.l_h, r.flexion, r.warped_phase, r.k,          r.fx,
          r.fy, r.hx,  r.hy,  r.dis,     r.theta_roll,   r.theta_pitch};
}

TraceRow FromFields(const std::array<double, 13>& f) {
  TraceRow r;
  r.t = f[0];
  r.l_f = f[1];
  r.l_h = f[2];
  r.flexion = f[3];
  r.warped_phase = f[4];
  r.k = f[5];
  r.fx = f[6];
  r.fy = f[7];
  r.hx = f[8];
  r.hy = f[9];
  r.dis = f[10];
  r.theta_roll = f[11];
  r.theta_pitch = f[12];
  return r;
}

void EnsureParent(const fs::path& path) {
  const fs::path parent = path.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) {
    throw IoError("cannot create directory '" + parent.string() +
                  "': " + ec.message());
  }
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  EnsureParent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

template <typename T>
T SidecarField(const json& j, const char* key, const fs::path& path) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": bad or missing '" + key +
                     "': " + e.what());
  }
}

}  // namespace

std::string FormatDouble(double v) {
  if (!std::isfinite(v)) {
    throw DomainError("cannot serialize non-finite value");
  }
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kDigits);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || token.empty()) {
    throw ParseError("malformed number '" + std::string(token) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError("non-finite number '" + std::string(token) + "'");
  }
  return v;
}

fs::path SidecarPath(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

json MetricsToJson(const BalanceMetrics& m) {
  return {{"mean_abs_roll", m.mean_abs_roll},
          {"mean_abs_pitch", m.mean_abs_pitch},
          {"half_stride_signed_area", m.half_stride_signed_area},
          {"roll_at_switch", m.roll_at_switch}};
}

BalanceMetrics MetricsFromJson(const json& j) {
  BalanceMetrics m;
  try {
    m.mean_abs_roll = j.at("mean_abs_roll").get<double>();
    m.mean_abs_pitch = j.at("mean_abs_pitch").get<double>();
    m.half_stride_signed_area = j.at("half_stride_signed_area").get<double>();
    m.roll_at_switch = j.at("roll_at_switch").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad metrics object: ") + e.what());
  }
  return m;
}

json SolverReportToJson(const SolverResult& r) {
  return {{"R_prime", r.r_prime},
          {"root", r.root},
          {"residual", r.residual},
          {"iterations", r.iterations},
          {"monotone", r.monotonicity.strictly_monotone},
          {"derivative_sign", r.monotonicity.derivative_sign},
          {"sign_changes", r.monotonicity.sign_changes},
          {"degenerate", r.monotonicity.degenerate},
          {"probe_samples", r.monotonicity.samples},
          {"warnings", r.warnings}};
}

void WriteJsonFile(const json& j, const fs::path& path) {
  WriteFile(path, j.dump(2) + "\n");
}

void WriteTrace(const ExperimentRecord& record, const fs::path& csv_path) {
  std::string text = Header();
  text += '\n';
  for (const TraceRow& row : record.rows) {
    const auto f = Fields(row);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) text += ',';
      text += FormatDouble(f[i]);
    }
    text += '\n';
  }
  WriteFile(csv_path, text);

  json side;
  side["schema_version"] = kSchemaVersion;
  side["config"] = ConfigToJson(record.config);
  side["controller"] = std::string(ControllerKindName(record.controller));
  side["frequency"] = record.frequency;
  side["seed"] = record.seed;
  side["phase_offset_steps"] = record.phase_offset_steps;
  side["balance_target"] = record.balance_target;
  side["effective_phase"] = record.effective_phase;
  side["rows"] = record.rows.size();
  side["metrics"] = MetricsToJson(record.metrics);
  WriteJsonFile(side, SidecarPath(csv_path));
}

ExperimentRecord ReadTrace(const fs::path& csv_path) {
  const fs::path side_path = SidecarPath(csv_path);
  json side;
  try {
    side = json::parse(ReadFile(side_path));
  } catch (const json::parse_error& e) {
    throw ParseError(side_path.string() + ": invalid JSON: " + e.what());
  }
  const std::string version =
      SidecarField<std::string>(side, "schema_version", side_path);
  if (version.substr(0, version.find('.')) != std::to_string(kSchemaMajor)) {
    throw ParseError(side_path.string() + ": unsupported schema version '" +
                     version + "'");
  }

  ExperimentRecord rec;
  try {
    rec.config = ConfigFromJson(side.at("config"));
    rec.controller =
        ParseControllerKind(SidecarField<std::string>(side, "controller", side_path));
  } catch (const ConfigError& e) {
    throw ParseError(side_path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(side_path.string() + ": missing config: " + e.what());
  }
  rec.frequency = SidecarField<double>(side, "frequency", side_path);
  rec.seed = SidecarField<std::uint64_t>(side, "seed", side_path);
  rec.phase_offset_steps =
      SidecarField<std::int64_t>(side, "phase_offset_steps", side_path);
  rec.balance_target = SidecarField<double>(side, "balance_target", side_path);
  rec.effective_phase = SidecarField<double>(side, "effective_phase", side_path);
  const auto expected_rows = SidecarField<std::size_t>(side, "rows", side_path);
  try {
    rec.metrics = MetricsFromJson(side.at("metrics"));
  } catch (const json::exception& e) {
    throw ParseError(side_path.string() + ": missing metrics: " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(side_path.string() + ": " + e.what());
  }

  std::istringstream in(ReadFile(csv_path));
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(csv_path.string() + ":" + std::to_string(line_no) + ": " +
                     what);
  };
  if (!std::getline(in, line)) {
    line_no = 1;
    fail("missing header");
  }
  ++line_no;
  if (line != Header()) fail("unexpected header '" + line + "'");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) fail("empty row");
    std::array<double, 13> f{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string_view token =
          std::string_view(line).substr(pos, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - pos);
      if (count < f.size()) {
        try {
          f[count] = ParseDouble(token);
        } catch (const ParseError& e) {
          fail("column " + std::string(kTraceColumns[count]) + ": " + e.what());
        }
      }
      ++count;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (count != f.size()) {
      fail("expected " + std::to_string(f.size()) + " fields, got " +
           std::to_string(count));
    }
    rec.rows.push_back(FromFields(f));
  }
  if (rec.rows.size() != expected_rows) {
    throw ParseError(csv_path.string() + ": sidecar lists " +
                     std::to_string(expected_rows) + " rows, CSV has " +
                     std::to_string(rec.rows.size()));
  }
  return rec;
}

}  // namespace spinebal
