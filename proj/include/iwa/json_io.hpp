#pragma once

// Shared input/output formats. One input schema with a discriminating
// top-level "kind" covers all subcommands; rationals travel as "p/q" strings,
// quadratic field elements as {d, a, b}, real algebraic elements as
// {minpoly, interval, coeffs}, lattices as {ambient_dim, basis}. Validation
// is strict: unknown fields are rejected and every error carries the path of
// the offending field.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ce.hpp"
#include "errors.hpp"
#include "heisenberg.hpp"
#include "quadfield.hpp"
#include "rational.hpp"
#include "realalg.hpp"
#include "torus.hpp"
#include "zlattice.hpp"

namespace iwa {

using Json = nlohmann::json;

// --- cursor with path tracking ----------------------------------------------

class JsonCursor {
public:
  JsonCursor(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(path_, msg); }

  JsonCursor field(const std::string& name) const {
    require_object();
    auto it = j_->find(name);
    if (it == j_->end()) fail("missing field \"" + name + "\"");
    return JsonCursor(*it, path_.empty() ? name : path_ + "." + name);
  }

  bool has(const std::string& name) const {
    require_object();
    return j_->contains(name);
  }

  void allow_only(const std::vector<std::string>& keys) const {
    require_object();
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      bool ok = false;
      for (const auto& k : keys)
        if (it.key() == k) { ok = true; break; }
      if (!ok) fail("unknown field \"" + it.key() + "\"");
    }
  }

  std::size_t array_size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  JsonCursor item(std::size_t i) const {
    return JsonCursor((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  std::string as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  std::int64_t as_int() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<std::int64_t>();
  }

  Rat as_rational() const {
    if (!j_->is_string()) fail("expected a rational \"p/q\" string");
    try {
      return parse_rational(j_->get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }

private:
  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  const Json* j_;
  std::string path_;
};

// --- value parsers -----------------------------------------------------------

inline QuadField parse_quad_field(const JsonCursor& c) {
  c.allow_only({"d"});
  try {
    return quad_field(c.field("d").as_int());
  } catch (const Error& e) {
    c.field("d").fail(e.what());
  }
}

inline QuadElem parse_quad_elem(const JsonCursor& c, std::optional<QuadField> expected = std::nullopt) {
  c.allow_only({"d", "a", "b"});
  QuadField f = expected ? *expected : QuadField{};
  if (c.has("d") || !expected) {
    try {
      f = quad_field(c.field("d").as_int());
    } catch (const Error& e) {
      c.field("d").fail(e.what());
    }
  }
  if (expected && f != *expected) c.field("d").fail("field does not match the document field");
  return QuadElem(f, c.field("a").as_rational(), c.field("b").as_rational());
}

inline VecQ parse_rational_vector(const JsonCursor& c) {
  VecQ v;
  for (std::size_t i = 0; i < c.array_size(); ++i) v.push_back(c.item(i).as_rational());
  return v;
}

inline ZLattice parse_zlattice(const JsonCursor& c) {
  c.allow_only({"ambient_dim", "basis"});
  std::int64_t m = c.field("ambient_dim").as_int();
  if (m < 1) c.field("ambient_dim").fail("ambient dimension must be positive");
  std::vector<VecQ> rows;
  JsonCursor basis = c.field("basis");
  for (std::size_t i = 0; i < basis.array_size(); ++i) {
    VecQ row = parse_rational_vector(basis.item(i));
    if (row.size() != static_cast<std::size_t>(m)) basis.item(i).fail("row length does not match ambient_dim");
    rows.push_back(std::move(row));
  }
  return ZLattice::from_generators(static_cast<std::size_t>(m), rows);
}

inline RealAlgField parse_realalg_field(const JsonCursor& minpoly, const JsonCursor& interval) {
  VecQ coeffs = parse_rational_vector(minpoly);
  if (interval.array_size() != 2) interval.fail("interval must be [lo, hi]");
  try {
    return RealAlgField::create(PolyQ(coeffs), interval.item(0).as_rational(), interval.item(1).as_rational());
  } catch (const Error& e) {
    minpoly.fail(e.what());
  }
}

inline RealAlgElem parse_realalg_elem(const JsonCursor& c, std::optional<RealAlgField> expected = std::nullopt) {
  c.allow_only({"minpoly", "interval", "coeffs"});
  RealAlgField f = parse_realalg_field(c.field("minpoly"), c.field("interval"));
  if (expected && f != *expected) c.fail("element field does not match the other entries");
  VecQ coeffs = parse_rational_vector(c.field("coeffs"));
  try {
    return RealAlgElem(f, std::move(coeffs));
  } catch (const Error& e) {
    c.field("coeffs").fail(e.what());
  }
}

// --- input documents ----------------------------------------------------------

struct HeisenbergInput {
  QuadField field;
  std::vector<HeisPoint> generators;
};

struct ConstructInput {
  ZLattice delta, gamma;
  QuadField field;
};

struct TorusInput {
  std::optional<KLatticeTag> klattice;                                  // {klattice, d}
  std::optional<std::pair<RealAlgField, std::vector<std::vector<RealAlgElem>>>> jmodel; // {J, g}
};

struct CEInput {
  std::vector<CEGenerator> generators;
  std::vector<std::vector<DTerm>> dgens;
};

using InputDocument = std::variant<HeisenbergInput, ConstructInput, TorusInput, CEInput>;

inline InputDocument parse_input_document(const Json& j) {
  JsonCursor root(j, "");
  std::string kind = root.field("kind").as_string();
  if (root.field("version").as_int() != 1) root.field("version").fail("unsupported format version");

  if (kind == "heisenberg") {
    root.allow_only({"version", "kind", "field", "generators"});
    QuadField f = parse_quad_field(root.field("field"));
    std::vector<HeisPoint> gens;
    JsonCursor g = root.field("generators");
    if (g.array_size() == 0) g.fail("generator list must be nonempty");
    for (std::size_t i = 0; i < g.array_size(); ++i) {
      JsonCursor gi = g.item(i);
      gi.allow_only({"a", "b", "c"});
      gens.push_back(HeisPoint(parse_quad_elem(gi.field("a"), f), parse_quad_elem(gi.field("b"), f),
                               parse_quad_elem(gi.field("c"), f)));
    }
    return HeisenbergInput{f, std::move(gens)};
  }

  if (kind == "construct") {
    root.allow_only({"version", "kind", "construct"});
    JsonCursor c = root.field("construct");
    c.allow_only({"delta", "gamma", "d"});
    QuadField f = [&] {
      try {
        return quad_field(c.field("d").as_int());
      } catch (const Error& e) {
        c.field("d").fail(e.what());
      }
    }();
    return ConstructInput{parse_zlattice(c.field("delta")), parse_zlattice(c.field("gamma")), f};
  }

  if (kind == "torus") {
    if (root.has("klattice")) {
      root.allow_only({"version", "kind", "klattice", "d"});
      QuadField f = [&] {
        try {
          return quad_field(root.field("d").as_int());
        } catch (const Error& e) {
          root.field("d").fail(e.what());
        }
      }();
      return TorusInput{KLatticeTag{f, parse_zlattice(root.field("klattice"))}, std::nullopt};
    }
    root.allow_only({"version", "kind", "J", "g"});
    std::int64_t g = root.field("g").as_int();
    if (g < 1) root.field("g").fail("genus must be positive");
    JsonCursor jm = root.field("J");
    if (jm.array_size() != static_cast<std::size_t>(2 * g)) jm.fail("J must be a 2g x 2g matrix");
    std::optional<RealAlgField> f;
    std::vector<std::vector<RealAlgElem>> rows;
    for (std::size_t i = 0; i < jm.array_size(); ++i) {
      JsonCursor ri = jm.item(i);
      if (ri.array_size() != static_cast<std::size_t>(2 * g)) ri.fail("J must be a 2g x 2g matrix");
      std::vector<RealAlgElem> row;
      for (std::size_t k = 0; k < ri.array_size(); ++k) {
        RealAlgElem e = parse_realalg_elem(ri.item(k), f);
        if (!f) f = e.field();
        row.push_back(std::move(e));
      }
      rows.push_back(std::move(row));
    }
    return TorusInput{std::nullopt, std::make_pair(*f, std::move(rows))};
  }

  if (kind == "ce-algebra") {
    root.allow_only({"version", "kind", "generators", "d"});
    std::vector<CEGenerator> gens;
    std::map<std::string, std::size_t> by_name;
    JsonCursor g = root.field("generators");
    for (std::size_t i = 0; i < g.array_size(); ++i) {
      JsonCursor gi = g.item(i);
      gi.allow_only({"name", "p", "q"});
      CEGenerator gen{gi.field("name").as_string(), static_cast<int>(gi.field("p").as_int()),
                      static_cast<int>(gi.field("q").as_int())};
      if (by_name.count(gen.name)) gi.field("name").fail("duplicate generator name");
      by_name[gen.name] = i;
      gens.push_back(std::move(gen));
    }
    std::vector<std::vector<DTerm>> dgens(gens.size());
    JsonCursor dt = root.field("d");
    for (auto it = dt.raw().begin(); it != dt.raw().end(); ++it) {
      auto found = by_name.find(it.key());
      if (found == by_name.end()) dt.fail("differential for unknown generator \"" + it.key() + "\"");
      JsonCursor terms(it.value(), dt.path() + "." + it.key());
      for (std::size_t i = 0; i < terms.array_size(); ++i) {
        JsonCursor t = terms.item(i);
        if (t.array_size() != 3) t.fail("expected [coeff, gen_i, gen_j]");
        std::int64_t a = t.item(1).as_int(), b = t.item(2).as_int();
        if (a < 0 || b < 0 || a >= static_cast<std::int64_t>(gens.size()) ||
            b >= static_cast<std::int64_t>(gens.size()))
          t.fail("generator index out of range");
        dgens[found->second].push_back(DTerm{t.item(0).as_rational(), static_cast<std::size_t>(a),
                                             static_cast<std::size_t>(b)});
      }
    }
    return CEInput{std::move(gens), std::move(dgens)};
  }

  root.field("kind").fail("unknown kind \"" + kind + "\"");
}

// --- serializers ----------------------------------------------------------------

inline Json to_json(const Rat& x) { return format_rational(x); }

inline Json to_json(const QuadElem& x) {
  return Json{{"d", x.field().d}, {"a", format_rational(x.a())}, {"b", format_rational(x.b())}};
}

inline Json to_json(const VecQ& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

inline Json to_json(const ZLattice& l) {
  Json basis = Json::array();
  for (const auto& r : l.basis()) basis.push_back(to_json(r));
  return Json{{"ambient_dim", l.ambient()}, {"basis", basis}};
}

inline Json to_json(const MatQ& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

inline Json to_json(const RealAlgElem& x) {
  Json mp = Json::array();
  for (const auto& c : x.field().minpoly().coeffs()) mp.push_back(format_rational(c));
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(format_rational(c));
  return Json{{"minpoly", mp},
              {"interval", Json::array({format_rational(x.field().lo()), format_rational(x.field().hi())})},
              {"coeffs", coeffs}};
}

inline Json to_json(const CMOrder& o) {
  return Json{{"d", o.field.d}, {"conductor", o.conductor.str()}};
}

// --- loading --------------------------------------------------------------------

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError(origin, "not valid JSON");
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

} // namespace iwa
