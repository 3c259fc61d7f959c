#include "honeypol/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "honeypol/errors.hpp"

namespace honeypol {
namespace {

// Keeps long double precision when re-reading emitted reports.
using LongJson = nlohmann::basic_json<std::map, std::vector, std::string, bool, std::int64_t,
                                      std::uint64_t, long double>;

std::string json_number(long double v) { return format_significant(v, 17); }

std::string json_string(const std::string &s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string format_significant(long double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*Lg", digits, value);
  return buf;
}

std::string sweep_to_csv(const SweepReport &report) {
  std::string out = "alpha,hex_value,honey_value,gap,regime,certified\n";
  for (const SweepRow &r : report.rows) {
    out += format_significant(r.alpha, 12);
    out += ',';
    out += format_significant(r.hex_value, 12);
    out += ',';
    out += format_significant(r.honey_value, 12);
    out += ',';
    out += format_significant(r.gap, 12);
    out += ',';
    out += r.regime;
    out += ',';
    out += r.certified ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string sweep_to_json(const SweepReport &report) {
  std::ostringstream os;
  os << "{\n  \"density\": " << json_number(report.density) << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const SweepRow &r = report.rows[i];
    os << (i == 0 ? "\n" : ",\n") << "    {\"alpha\": " << json_number(r.alpha)
       << ", \"hex_value\": " << json_number(r.hex_value)
       << ", \"honey_value\": " << json_number(r.honey_value)
       << ", \"gap\": " << json_number(r.gap) << ", \"tail_hex\": " << json_number(r.tail_hex)
       << ", \"tail_honey\": " << json_number(r.tail_honey)
       << ", \"regime\": " << json_string(r.regime)
       << ", \"certified\": " << (r.certified ? "true" : "false")
       << ", \"converged\": " << (r.converged ? "true" : "false") << "}";
  }
  os << (report.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

SweepReport sweep_from_json(std::string_view text) {
  try {
    const LongJson j = LongJson::parse(text);
    SweepReport rep;
    rep.density = static_cast<double>(j.at("density").get<long double>());
    for (const auto &r : j.at("rows")) {
      SweepRow row;
      row.alpha = static_cast<double>(r.at("alpha").get<long double>());
      row.hex_value = r.at("hex_value").get<long double>();
      row.honey_value = r.at("honey_value").get<long double>();
      row.gap = r.at("gap").get<long double>();
      row.tail_hex = r.at("tail_hex").get<long double>();
      row.tail_honey = r.at("tail_honey").get<long double>();
      row.regime = r.at("regime").get<std::string>();
      row.certified = r.at("certified").get<bool>();
      row.converged = r.at("converged").get<bool>();
      rep.rows.push_back(std::move(row));
    }
    return rep;
  } catch (const LongJson::exception &e) {
    throw ValidationError(std::string("malformed sweep report: ") + e.what());
  }
}

std::string config_to_json(const PeriodicConfiguration &config) {
  const Mat2 &b = config.lattice().basis();
  std::ostringstream os;
  auto num = [](double v) { return format_significant(v, 17); };
  os << "{\"basis\": [[" << num(b.m11) << ", " << num(b.m12) << "], [" << num(b.m21) << ", "
     << num(b.m22) << "]], \"shifts\": [";
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Vec2 &s = config.shifts()[i];
    os << (i == 0 ? "" : ", ") << "[" << num(s.x) << ", " << num(s.y) << "]";
  }
  os << "]}";
  return os.str();
}

PeriodicConfiguration config_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("structure file is not valid JSON: ") + e.what());
  }
  auto pair = [](const nlohmann::json &v, const char *what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ValidationError(std::string(what) + " must be a pair of numbers");
    }
    return Vec2{v[0].get<double>(), v[1].get<double>()};
  };
  if (!j.is_object() || !j.contains("basis") || !j.contains("shifts")) {
    throw ValidationError("structure file needs \"basis\" and \"shifts\"");
  }
  const auto &basis = j["basis"];
  if (!basis.is_array() || basis.size() != 2) {
    throw ValidationError("\"basis\" must be a 2x2 array");
  }
  const Vec2 row1 = pair(basis[0], "basis row");
  const Vec2 row2 = pair(basis[1], "basis row");
  const auto &shifts = j["shifts"];
  if (!shifts.is_array() || shifts.empty()) {
    throw ValidationError("\"shifts\" must be a non-empty array");
  }
  std::vector<Vec2> xs;
  for (const auto &s : shifts) xs.push_back(pair(s, "shift"));
  try {
    return PeriodicConfiguration::create(Lattice2::from_basis({row1.x, row1.y, row2.x, row2.y}),
                                         std::move(xs));
  } catch (const DomainError &e) {
    throw ValidationError(e.what());
  }
}

PeriodicConfiguration load_custom_structure(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open structure file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

}  // namespace honeypol
