#pragma once

// Bundled example documents. Tags of the form "corpus:NAME" resolve here
// unless IWA_CORPUS_DIR points at a directory with an overriding NAME.json.

#include <array>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace iwa {

namespace detail {

inline Json quad(std::int64_t d, const std::string& a, const std::string& b) {
  return Json{{"d", d}, {"a", a}, {"b", b}};
}

inline Json heis_doc(std::int64_t d, const std::vector<std::array<Json, 3>>& gens) {
  Json g = Json::array();
  for (const auto& t : gens) g.push_back(Json{{"a", t[0]}, {"b", t[1]}, {"c", t[2]}});
  return Json{{"version", 1}, {"kind", "heisenberg"}, {"field", Json{{"d", d}}}, {"generators", g}};
}

inline Json lattice_doc(std::size_t ambient, const std::vector<std::vector<std::string>>& rows) {
  Json basis = Json::array();
  for (const auto& r : rows) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(x);
    basis.push_back(row);
  }
  return Json{{"ambient_dim", ambient}, {"basis", basis}};
}

inline Json realalg(const std::vector<std::string>& minpoly, const std::string& lo, const std::string& hi,
                    const std::vector<std::string>& coeffs) {
  Json mp = Json::array(), cs = Json::array();
  for (const auto& x : minpoly) mp.push_back(x);
  for (const auto& x : coeffs) cs.push_back(x);
  return Json{{"minpoly", mp}, {"interval", Json::array({lo, hi})}, {"coeffs", cs}};
}

// Entries over Q(sqrt(2)) as (rational part, sqrt(2) part).
inline Json sqrt2_entry(const std::string& c0, const std::string& c1) {
  return realalg({"-2", "0", "1"}, "1", "2", {c0, c1});
}

inline Json jmodel_doc(std::size_t g, const std::vector<std::vector<Json>>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    Json row = Json::array();
    for (const auto& e : r) row.push_back(e);
    j.push_back(row);
  }
  return Json{{"version", 1}, {"kind", "torus"}, {"J", j}, {"g", g}};
}

} // namespace detail

inline const std::map<std::string, Json>& corpus_documents() {
  static const std::map<std::string, Json> docs = [] {
    using detail::quad;
    std::map<std::string, Json> m;

    auto z = [](std::int64_t d) { return detail::quad(d, "0", "0"); };
    auto one = [](std::int64_t d) { return detail::quad(d, "1", "0"); };
    auto root = [](std::int64_t d) { return detail::quad(d, "0", "1"); };

    // Gaussian lattice: entries run over a Z[i]-basis.
    m["gaussian"] = detail::heis_doc(1, {{one(1), z(1), z(1)},
                                         {root(1), z(1), z(1)},
                                         {z(1), one(1), z(1)},
                                         {z(1), root(1), z(1)},
                                         {z(1), z(1), one(1)},
                                         {z(1), z(1), root(1)}});

    // Eisenstein lattice: entries over Z[omega], omega = (-1 + sqrt(-3))/2.
    Json omega = quad(3, "-1/2", "1/2");
    m["eisenstein"] = detail::heis_doc(3, {{one(3), z(3), z(3)},
                                           {omega, z(3), z(3)},
                                           {z(3), one(3), z(3)},
                                           {z(3), omega, z(3)},
                                           {z(3), z(3), one(3)},
                                           {z(3), z(3), omega}});

    // Index-scaled variant: Delta doubled, Gamma unchanged.
    Json two = quad(1, "2", "0"), twoi = quad(1, "0", "2");
    m["scaled"] = detail::heis_doc(1, {{two, z(1), z(1)},
                                       {twoi, z(1), z(1)},
                                       {z(1), two, z(1)},
                                       {z(1), twoi, z(1)},
                                       {z(1), z(1), one(1)},
                                       {z(1), z(1), root(1)}});

    // Refined variant: a half-integer abelian direction forces Gamma = Z[i]/2.
    Json half = quad(1, "1/2", "0");
    m["refined"] = detail::heis_doc(1, {{half, z(1), z(1)},
                                        {z(1), one(1), z(1)},
                                        {z(1), z(1), one(1)},
                                        {root(1), z(1), z(1)},
                                        {z(1), root(1), z(1)},
                                        {z(1), z(1), root(1)}});

    auto construct_doc = [&](Json delta, Json gamma, std::int64_t d) {
      return Json{{"version", 1},
                  {"kind", "construct"},
                  {"construct", Json{{"delta", delta}, {"gamma", gamma}, {"d", d}}}};
    };
    Json z4 = detail::lattice_doc(4, {{"1", "0", "0", "0"},
                                      {"0", "1", "0", "0"},
                                      {"0", "0", "1", "0"},
                                      {"0", "0", "0", "1"}});
    m["construct-gaussian"] = construct_doc(z4, detail::lattice_doc(2, {{"1", "0"}, {"0", "1"}}), 1);
    m["construct-bad-gamma"] = construct_doc(z4, detail::lattice_doc(2, {{"2", "0"}, {"0", "2"}}), 1);

    auto klattice_doc = [&](Json l, std::int64_t d) {
      return Json{{"version", 1}, {"kind", "torus"}, {"klattice", l}, {"d", d}};
    };
    m["gauss-curve"] = klattice_doc(detail::lattice_doc(2, {{"1", "0"}, {"0", "1"}}), 1);
    m["disc2-curve"] = klattice_doc(detail::lattice_doc(2, {{"1", "0"}, {"0", "1"}}), 2);
    m["eisenstein-curve"] = klattice_doc(detail::lattice_doc(2, {{"1", "0"}, {"1/2", "1/2"}}), 3);
    m["conductor2-curve"] = klattice_doc(detail::lattice_doc(2, {{"1", "0"}, {"0", "2"}}), 1);
    m["gauss-surface"] = klattice_doc(detail::lattice_doc(4, {{"1", "0", "0", "0"},
                                                              {"0", "1", "0", "0"},
                                                              {"0", "0", "1", "0"},
                                                              {"0", "0", "0", "1"}}),
                                      1);

    // Elliptic curve with period i + sqrt(2): no complex multiplication.
    using detail::sqrt2_entry;
    std::vector<std::vector<Json>> jt{{sqrt2_entry("0", "-1"), sqrt2_entry("-3", "0")},
                                      {sqrt2_entry("1", "0"), sqrt2_entry("0", "1")}};
    m["noncm-curve"] = detail::jmodel_doc(1, jt);

    // That curve times itself, and times the CM curve of period 2i.
    auto zero2 = sqrt2_entry("0", "0");
    m["noncm-product"] = detail::jmodel_doc(
        2, {{jt[0][0], jt[0][1], zero2, zero2},
            {jt[1][0], jt[1][1], zero2, zero2},
            {zero2, zero2, jt[0][0], jt[0][1]},
            {zero2, zero2, jt[1][0], jt[1][1]}});
    m["mixed-product"] = detail::jmodel_doc(
        2, {{jt[0][0], jt[0][1], zero2, zero2},
            {jt[1][0], jt[1][1], zero2, zero2},
            {zero2, zero2, sqrt2_entry("0", "0"), sqrt2_entry("-2", "0")},
            {zero2, zero2, sqrt2_entry("1/2", "0"), sqrt2_entry("0", "0")}});

    auto ce_doc = [](Json gens, Json d) {
      return Json{{"version", 1}, {"kind", "ce-algebra"}, {"generators", gens}, {"d", d}};
    };
    Json iwa_gens = Json::array({Json{{"name", "alpha"}, {"p", 1}, {"q", 0}},
                                 Json{{"name", "beta"}, {"p", 1}, {"q", 0}},
                                 Json{{"name", "gamma"}, {"p", 1}, {"q", 0}},
                                 Json{{"name", "alphabar"}, {"p", 0}, {"q", 1}},
                                 Json{{"name", "betabar"}, {"p", 0}, {"q", 1}},
                                 Json{{"name", "gammabar"}, {"p", 0}, {"q", 1}}});
    m["iwasawa-ce"] = ce_doc(iwa_gens, Json{{"gamma", Json::array({Json::array({"1", 0, 1})})},
                                            {"gammabar", Json::array({Json::array({"1", 3, 4})})}});
    m["heis3-ce"] = ce_doc(Json::array({Json{{"name", "xi1"}, {"p", 1}, {"q", 0}},
                                        Json{{"name", "xi2"}, {"p", 1}, {"q", 0}},
                                        Json{{"name", "xi3"}, {"p", 1}, {"q", 0}}}),
                           Json{{"xi3", Json::array({Json::array({"-1", 0, 1})})}});
    m["abelian6-ce"] = ce_doc(iwa_gens, Json::object());

    return m;
  }();
  return docs;
}

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : corpus_documents()) names.push_back(k);
  return names;
}

// Resolves a path or "corpus:NAME" tag to a parsed document.
inline Json load_document(const std::string& path_or_tag) {
  const std::string prefix = "corpus:";
  if (path_or_tag.rfind(prefix, 0) == 0) {
    std::string name = path_or_tag.substr(prefix.size());
    if (const char* dir = std::getenv("IWA_CORPUS_DIR")) {
      std::string candidate = std::string(dir) + "/" + name + ".json";
      std::ifstream probe(candidate);
      if (probe) return load_json_file(candidate);
    }
    auto it = corpus_documents().find(name);
    if (it == corpus_documents().end()) throw Error("unknown corpus entry \"" + name + "\"");
    return it->second;
  }
  return load_json_file(path_or_tag);
}

inline InputDocument load_input(const std::string& path_or_tag) {
  return parse_input_document(load_document(path_or_tag));
}

} // namespace iwa
