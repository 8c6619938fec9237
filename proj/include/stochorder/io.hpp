#pragma once

// File formats:
//   joint JSON   {"atoms":[{"x":..,"y":..,"p":..}, ...]}
//   grid JSON    {"grid":[...], "fx":[...], "fy":[...]}
//   sample CSV   header "x,y", one pair per row
// and the JSON rendering of every report.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stochorder/error.hpp"
#include "stochorder/estimators.hpp"
#include "stochorder/grid.hpp"
#include "stochorder/joint.hpp"
#include "stochorder/paired_sample.hpp"
#include "stochorder/partial_order.hpp"
#include "stochorder/precedence.hpp"
#include "stochorder/reproduce.hpp"

namespace stochorder::io {

using nlohmann::json;

/// Rounds to 10 significant digits; non-finite values become null.
inline json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::strtod(buf, nullptr);
}

// ---------------------------------------------------------------- parsing

namespace detail {

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

inline double field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::ParseError, where + " lacks \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw Error(ErrorCode::ParseError, where + " field \"" + key + "\" is not a number");
  return v.get<double>();
}

inline std::vector<double> number_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw Error(ErrorCode::ParseError, std::string("grid document lacks array \"") + key + "\"");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < doc.at(key).size(); ++i) {
    const json& v = doc.at(key)[i];
    if (!v.is_number()) {
      throw Error(ErrorCode::ParseError, std::string(key) + "[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

inline bool is_grid_document(const json& doc) { return doc.is_object() && doc.contains("grid"); }

inline FiniteJointDistribution joint_from_json(const json& doc, bool normalize = false) {
  if (!doc.is_object() || !doc.contains("atoms") || !doc.at("atoms").is_array()) {
    throw Error(ErrorCode::ParseError, "joint document needs an \"atoms\" array");
  }
  std::vector<Atom> raw;
  const json& atoms = doc.at("atoms");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string where = "atom " + std::to_string(i);
    raw.push_back({detail::field(atoms[i], "x", where), detail::field(atoms[i], "y", where),
                   detail::field(atoms[i], "p", where)});
  }
  return make_joint(std::move(raw), normalize);
}

inline FiniteJointDistribution parse_joint(std::string_view text, bool normalize = false) {
  return joint_from_json(detail::parse_document(text), normalize);
}

inline GridDensityPair grid_from_json(const json& doc) {
  return GridDensityPair::make(detail::number_array(doc, "grid"), detail::number_array(doc, "fx"),
                               detail::number_array(doc, "fy"));
}

inline json to_json(const FiniteJointDistribution& j) {
  json atoms = json::array();
  for (const Atom& a : j.atoms()) atoms.push_back({{"x", a.x}, {"y", a.y}, {"p", a.p}});
  return {{"atoms", atoms}};
}

inline json to_json(const GridDensityPair& g) {
  return {{"grid", std::vector<double>(g.grid().begin(), g.grid().end())},
          {"fx", std::vector<double>(g.fx().begin(), g.fx().end())},
          {"fy", std::vector<double>(g.fy().begin(), g.fy().end())}};
}

/// Reads a sample CSV. Errors name the 1-based line of the offending row.
inline PairedSample read_sample_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  auto parse_number = [&](std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
  };

  bool header_seen = false;
  std::vector<Pair> pairs;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (!header_seen) {
      if (line_no == 1 && row.starts_with("\xEF\xBB\xBF")) row.remove_prefix(3);
      if (row.empty()) continue;
      if (row != "x,y") throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected header x,y");
      header_seen = true;
      continue;
    }
    if (row.empty()) continue;
    const auto comma = row.find(',');
    Pair p;
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos ||
        !parse_number(row.substr(0, comma), p.x) || !parse_number(row.substr(comma + 1), p.y)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed row \"" + std::string(row) + "\"");
    }
    pairs.push_back(p);
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "empty sample file");
  if (pairs.empty()) throw Error(ErrorCode::SampleTooSmall, "sample file has no rows");
  return PairedSample(std::move(pairs));
}

inline void write_sample_csv(std::ostream& out, const PairedSample& s) {
  out << "x,y\n";
  char buf[64];
  for (const Pair& p : s.pairs()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
    out << buf;
  }
}

// ---------------------------------------------------------------- reports

inline json to_json(const Verdict& v) {
  return {{"verdict", std::string(to_string(v.outcome))},
          {"preferred", std::string(preferred_side(v.outcome))},
          {"first", number(v.first)},
          {"second", number(v.second)}};
}

inline json to_json(const DecompositionReport& d) {
  return {{"below", number(d.below)},
          {"above", number(d.above)},
          {"total", number(d.total)},
          {"normalized_below", d.normalized_below ? number(*d.normalized_below) : json(nullptr)}};
}

inline json to_json(const EventProbs& e) {
  return {{"less", number(e.less)}, {"equal", number(e.equal)}, {"greater", number(e.greater)}};
}

inline json to_json(const ComparisonReport& r) {
  return {{"sp", to_json(r.sp)},
          {"mean", to_json(r.mean)},
          {"cp_l1", to_json(r.cp_l1)},
          {"cp_kstar", to_json(r.cp_kstar)},
          {"l1", to_json(r.l1)},
          {"kstar", to_json(r.kstar)},
          {"probs", to_json(r.probs)},
          {"means", {{"x", number(r.mean_x)}, {"y", number(r.mean_y)}}}};
}

inline json to_json(const PartialOrderReport& r) {
  json out = to_json(r.verdict);
  out["order"] = r.order;
  if (r.witness) {
    out["witness"] = {{"first_holds_at", number(r.witness->first_holds_at)},
                      {"second_holds_at", number(r.witness->second_holds_at)}};
  }
  return out;
}

inline json interval(const EstimateWithCI& e) { return json::array({number(e.ci_low), number(e.ci_high)}); }

inline json to_json(const EstimateReport& r) {
  json out = to_json(r.point);
  out["probs"]["ci"] = {{"less", interval(r.p_less)}, {"equal", interval(r.p_equal)}, {"greater", interval(r.p_greater)}};
  out["l1"]["ci"] = {{"below", interval(r.l1_below)}, {"above", interval(r.l1_above)}};
  out["kstar"]["ci"] = {{"below", interval(r.kstar_below)}, {"above", interval(r.kstar_above)}};
  out["mean_difference"] = {{"point", number(r.mean_difference.point)}, {"ci", interval(r.mean_difference)}};
  out["n"] = r.n;
  out["bootstrap"] = {{"method", r.p_less.method},
                      {"resamples", r.options.resamples},
                      {"level", number(r.options.level)},
                      {"seed", r.options.seed}};
  return out;
}

inline json to_json(const Check::Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return number(*d);
  return std::get<std::string>(v);
}

inline json to_json(const Reproduction& r) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    json item = {{"quantity", c.quantity},
                 {"origin", std::string(to_string(c.origin))},
                 {"pass", c.pass},
                 {"asserted", c.asserted}};
    if (c.tolerance) item["tolerance"] = number(*c.tolerance);
    if (!c.note.empty()) item["note"] = c.note;
    checks.push_back(std::move(item));
  }
  json expected = json::object(), computed = json::object();
  for (const Check& c : r.checks) {
    expected[c.quantity] = to_json(c.expected);
    computed[c.quantity] = to_json(c.computed);
  }
  return {{"scenario", r.scenario}, {"pass", r.pass()}, {"expected", expected}, {"computed", computed}, {"checks", checks}};
}

}  // namespace stochorder::io
