#include "confext/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include <fmt/format.h>
#include <json.hpp>

#include "confext/errors.hpp"

namespace confext {

using nlohmann::json;

ResultRow& RunReport::check(std::string name, double value, double reference,
                            double tolerance) {
  ResultRow r;
  r.name = std::move(name);
  r.value = value;
  r.reference = reference;
  double res = std::abs(value - reference);
  if (reference != 0.0) res /= std::abs(reference);
  r.residual = res;
  r.tolerance = tolerance;
  r.pass = std::isfinite(res) && res <= tolerance;
  results.push_back(std::move(r));
  return results.back();
}

ResultRow& RunReport::value(std::string name, double v) {
  ResultRow r;
  r.name = std::move(name);
  r.value = v;
  results.push_back(std::move(r));
  return results.back();
}

ResultRow& RunReport::flag(std::string name, bool ok) {
  ResultRow& r = value(std::move(name), ok ? 1.0 : 0.0);
  r.pass = ok;
  return r;
}

bool RunReport::all_pass() const {
  bool ok = pass.value_or(true);
  for (const auto& r : results) ok = ok && r.pass.value_or(true);
  return ok;
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}
template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, double>)
    return num(*v);
  else
    return *v;
}

json to_tree(const RunReport& r) {
  json j;
  j["command"] = r.command;
  if (r.params) {
    j["params"] = {{"n", r.params->n},
                   {"alpha", num(r.params->alpha)},
                   {"beta", num(r.params->beta)},
                   {"valid", r.params->valid()},
                   {"failed", r.params->failed}};
  } else {
    j["params"] = nullptr;
  }
  if (r.exponents) {
    const auto& e = *r.exponents;
    j["exponents"] = {{"p", num(e.p)},         {"t", num(e.t)},         {"p_conj", num(e.p_conj)},
                      {"t_conj", num(e.t_conj)}, {"s", num(e.s)},         {"theta", num(e.theta)},
                      {"kappa", num(e.kappa)},   {"sigma", num(e.sigma)}, {"tau", num(e.tau)}};
  } else {
    j["exponents"] = nullptr;
  }
  j["results"] = json::array();
  for (const auto& row : r.results) {
    j["results"].push_back({{"name", row.name},
                            {"value", num(row.value)},
                            {"reference", opt(row.reference)},
                            {"residual", opt(row.residual)},
                            {"tolerance", opt(row.tolerance)},
                            {"pass", opt(row.pass)}});
  }
  j["tables"] = json::array();
  for (const auto& t : r.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json jr = json::array();
      for (double v : row) jr.push_back(num(v));
      rows.push_back(std::move(jr));
    }
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  j["quadrature"] = {{"level", r.level}, {"two_level_delta", num(r.two_level_delta)}};
  j["runtime_ms"] = r.runtime_ms;
  j["pass"] = opt(r.pass);
  if (r.timestamp) j["timestamp"] = *r.timestamp;
  return j;
}

// nlohmann prints the shortest round-trip form; floats are written here with
// a fixed 17 significant digits instead.
void dump(const json& j, std::string& out, int indent, int depth) {
  auto pad = [&](int d) { out += '\n' + std::string(static_cast<std::size_t>(indent * d), ' '); };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += json(it.key()).dump() + ": ";
        dump(it.value(), out, indent, depth + 1);
      }
      pad(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        dump(j[i], out, indent, depth + 1);
      }
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += fmt::format("{:.17g}", j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

double get_num(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }
template <class T>
std::optional<T> get_opt(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::string to_json(const RunReport& r) {
  std::string out;
  dump(to_tree(r), out, 2, 0);
  out += '\n';
  return out;
}

RunReport from_json(const std::string& text) {
  json j = json::parse(text);
  RunReport r;
  r.command = j.at("command").get<std::string>();
  if (!j.at("params").is_null()) {
    const auto& p = j["params"];
    ParamTriple P;
    P.n = p.at("n").get<int>();
    P.alpha = get_num(p.at("alpha"));
    P.beta = get_num(p.at("beta"));
    P.failed = p.at("failed").get<std::vector<std::string>>();
    r.params = P;
  }
  if (!j.at("exponents").is_null()) {
    const auto& e = j["exponents"];
    ExponentSet E;
    E.p = get_num(e.at("p"));
    E.t = get_num(e.at("t"));
    E.p_conj = get_num(e.at("p_conj"));
    E.t_conj = get_num(e.at("t_conj"));
    E.s = get_num(e.at("s"));
    E.theta = get_num(e.at("theta"));
    E.kappa = get_num(e.at("kappa"));
    E.sigma = get_num(e.at("sigma"));
    E.tau = get_num(e.at("tau"));
    r.exponents = E;
  }
  for (const auto& row : j.at("results")) {
    ResultRow x;
    x.name = row.at("name").get<std::string>();
    x.value = get_num(row.at("value"));
    x.reference = get_opt<double>(row.at("reference"));
    x.residual = get_opt<double>(row.at("residual"));
    x.tolerance = get_opt<double>(row.at("tolerance"));
    x.pass = get_opt<bool>(row.at("pass"));
    r.results.push_back(std::move(x));
  }
  for (const auto& t : j.at("tables")) {
    ResultTable x;
    x.name = t.at("name").get<std::string>();
    x.columns = t.at("columns").get<std::vector<std::string>>();
    for (const auto& row : t.at("rows")) {
      std::vector<double> v;
      for (const auto& c : row) v.push_back(get_num(c));
      x.rows.push_back(std::move(v));
    }
    r.tables.push_back(std::move(x));
  }
  r.level = j.at("quadrature").at("level").get<int>();
  r.two_level_delta = get_num(j["quadrature"].at("two_level_delta"));
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  r.pass = get_opt<bool>(j.at("pass"));
  if (j.contains("timestamp")) r.timestamp = j["timestamp"].get<std::string>();
  return r;
}

namespace {
std::string csv_num(double v) { return fmt::format("{:.17g}", v); }
template <class T>
std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>)
    return *v ? "true" : "false";
  else
    return csv_num(*v);
}
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}
}  // namespace

std::string to_csv(const RunReport& r) {
  std::string out = std::string(kCsvHeader) + '\n';
  for (const auto& row : r.results) {
    out += fmt::format("{},{},{},{},{},{}\n", csv_field(row.name), csv_num(row.value),
                       csv_opt(row.reference), csv_opt(row.residual), csv_opt(row.tolerance),
                       csv_opt(row.pass));
  }
  // tables flatten to one row per cell: table[row].column
  for (const auto& t : r.tables) {
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      for (std::size_t k = 0; k < t.columns.size() && k < t.rows[i].size(); ++k)
        out += fmt::format("{},{},,,,\n", csv_field(fmt::format("{}[{}].{}", t.name, i, t.columns[k])),
                           csv_num(t.rows[i][k]));
  }
  return out;
}

void emit(const RunReport& r, Format f, const std::string& path) {
  const std::string text = f == Format::Json ? to_json(r) : to_csv(r);
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << text;
  if (!os.flush()) throw Error("write to " + path + " failed");
}

}  // namespace confext
