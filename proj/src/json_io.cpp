#include "topent/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace topent {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object())
    raise(ErrorCode::ParseError, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end())
    raise(ErrorCode::ParseError, std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number())
    raise(ErrorCode::ParseError, std::string(what) + " must be a number");
  return j.get<double>();
}

long long integer(const Json& j, const char* what) {
  if (!j.is_number_integer())
    raise(ErrorCode::ParseError, std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string())
    raise(ErrorCode::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array())
    raise(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) out.push_back(number(v, what));
  return out;
}

Extension extension_from_name(const std::string& name) {
  if (name == "periodic") return Extension::Periodic;
  if (name == "constant_tail") return Extension::ConstantTail;
  raise(ErrorCode::ParseError,
        "extension must be \"periodic\" or \"constant_tail\", got \"" + name +
            "\"");
}

const char* extension_name(Extension e) {
  return e == Extension::Periodic ? "periodic" : "constant_tail";
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    raise(ErrorCode::ParseError, "cannot read \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    raise(ErrorCode::ParseError, path + ": " + e.what());
  }
}

TransitionMatrix matrix_from_json(const Json& j) {
  const long long n = integer(field(j, "n"), "\"n\"");
  const Json& rows = field(j, "rows");
  if (!rows.is_array())
    raise(ErrorCode::ParseError, "\"rows\" must be an array");
  if (static_cast<long long>(rows.size()) != n)
    raise(ErrorCode::ParseError,
          "\"rows\" holds " + std::to_string(rows.size()) +
              " rows but \"n\" is " + std::to_string(n));
  std::vector<std::vector<int>> entries;
  entries.reserve(rows.size());
  for (const Json& row : rows) {
    if (!row.is_array())
      raise(ErrorCode::ParseError, "each row must be an array");
    std::vector<int> r;
    r.reserve(row.size());
    for (const Json& v : row)
      r.push_back(static_cast<int>(integer(v, "matrix entry")));
    entries.push_back(std::move(r));
  }
  return TransitionMatrix::validate(entries);
}

Json matrix_to_json(const TransitionMatrix& A) {
  Json rows = Json::array();
  for (int i = 0; i < A.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < A.size(); ++j) row.push_back(A.at(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"n", A.size()}, {"rows", std::move(rows)}};
}

SystemModel system_from_json(const Json& j) {
  if (j.is_object() && j.contains("family")) {
    const std::string family = text(field(j, "family"), "\"family\"");
    if (family != "tent")
      raise(ErrorCode::ParseError, "unknown family \"" + family + "\"");
    const Json& slopes = field(j, "slopes");
    const Extension ext =
        extension_from_name(text(field(slopes, "kind"), "\"kind\""));
    return tent_family(number_array(field(slopes, "values"), "slope"), ext);
  }
  const std::vector<double> dom =
      number_array(field(j, "domain"), "domain endpoint");
  if (dom.size() != 2)
    raise(ErrorCode::ParseError, "\"domain\" must be [a, b]");
  const Extension ext =
      extension_from_name(text(field(j, "extension"), "\"extension\""));
  const Json& steps = field(j, "steps");
  if (!steps.is_array())
    raise(ErrorCode::ParseError, "\"steps\" must be an array");
  std::vector<PiecewiseLinearMap> maps;
  maps.reserve(steps.size());
  for (const Json& step : steps)
    maps.push_back(
        {number_array(field(step, "breakpoints"), "breakpoint"),
         number_array(field(step, "values"), "value")});
  return SystemModel(Interval{dom[0], dom[1]}, std::move(maps), ext);
}

Json system_to_json(const SystemModel& sys) {
  Json steps = Json::array();
  for (std::size_t k = 1; k <= sys.step_count(); ++k) {
    const PiecewiseLinearMap& m = sys.map(static_cast<long long>(k));
    steps.push_back(Json{{"breakpoints", m.breakpoints}, {"values", m.values}});
  }
  return Json{{"domain", {sys.domain().lo, sys.domain().hi}},
              {"extension", extension_name(sys.extension())},
              {"steps", std::move(steps)}};
}

CoverConfig cover_from_json(const Json& j) {
  const Json& sets = field(j, "sets");
  if (!sets.is_array())
    raise(ErrorCode::ParseError, "\"sets\" must be an array");
  CoverConfig cfg;
  cfg.sets.reserve(sets.size());
  for (const Json& s : sets) {
    const std::vector<double> ends = number_array(s, "set endpoint");
    if (ends.size() != 2)
      raise(ErrorCode::ParseError, "each set must be [l, r]");
    cfg.sets.push_back(Interval{ends[0], ends[1]});
  }
  if (j.contains("horizon")) {
    cfg.horizon = integer(j.at("horizon"), "\"horizon\"");
    if (cfg.horizon < 0)
      raise(ErrorCode::ParseError, "\"horizon\" must be non-negative");
  }
  return cfg;
}

Json cover_to_json(const CoverConfig& cfg) {
  Json sets = Json::array();
  for (const Interval& s : cfg.sets) sets.push_back({s.lo, s.hi});
  return Json{{"sets", std::move(sets)}, {"horizon", cfg.horizon}};
}

Json report_to_json(const ExpansionReport& report) {
  Json witnesses = Json::array();
  for (const Witness& w : report.witnesses)
    witnesses.push_back(Json{{"n", w.n},
                             {"i", w.i},
                             {"j", w.j},
                             {"uncovered_point", w.uncovered_point}});
  Json out{{"ok", report.ok},
           {"strict", report.strict},
           {"min_gap", report.min_gap},
           {"exact_covering", report.exact_covering},
           {"lambda_est", report.lambda_est},
           {"mu_est", report.mu_est},
           {"horizon", report.horizon},
           {"witnesses", std::move(witnesses)}};
  out["matrix"] = report.matrix ? matrix_to_json(*report.matrix) : Json();
  return out;
}

Json error_to_json(const Error& e) {
  return Json{{"error",
               {{"code", error_code_name(e.code())},
                {"index", e.index()},
                {"message", e.what()}}}};
}

std::string fnv1a_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    raise(ErrorCode::ParseError, "cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a_hex(buf.str());
}

Json manifest_to_json(const RunManifest& m) {
  Json inputs = Json::object();
  for (const auto& [path, digest] : m.inputs) inputs[path] = digest;
  return Json{{"command", m.command},
              {"version", m.version},
              {"config", m.config},
              {"inputs", std::move(inputs)},
              {"seed", m.seed}};
}

std::string manifest_digest(const RunManifest& m) {
  return fnv1a_hex(manifest_to_json(m).dump());
}

}  // namespace topent
