// Command-line front end: input parsing, command dispatch, report emission,
// bundled corpus management. Exit codes: 0 success/pass, 1 verification
// failure, 2 malformed input or usage error.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "iwa/ce.hpp"
#include "iwa/chern.hpp"
#include "iwa/corpus.hpp"
#include "iwa/heisenberg.hpp"
#include "iwa/json_io.hpp"
#include "iwa/torus.hpp"
#include "iwa/verify.hpp"

namespace {

using namespace iwa;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;

struct Options {
  bool json = false;
};

void emit(const Options& opt, const Json& j, const std::string& text) {
  if (opt.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

template <typename T>
T expect_kind(InputDocument doc, const char* what) {
  if (auto* p = std::get_if<T>(&doc)) return std::move(*p);
  throw SchemaError("kind", std::string("this command expects a ") + what + " document");
}

TorusJ torus_from_input(const TorusInput& in) {
  if (in.klattice) return TorusJ::from_klattice(in.klattice->lattice, in.klattice->field);
  return TorusJ::from_complex_structure(in.jmodel->first, in.jmodel->second);
}

std::string render_lattice(const ZLattice& l) {
  std::string s;
  for (const auto& row : l.basis()) {
    s += "    (";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + format_rational(row[j]);
    s += ")\n";
  }
  return s;
}

int cmd_lattice_validate(const Options& opt, const std::string& src) {
  auto in = expect_kind<HeisenbergInput>(load_input(src), "heisenberg");
  try {
    HeisLattice l = HeisLattice::validate(in.generators);
    Json j{{"cocompact", true},
           {"d", l.field().d},
           {"delta", to_json(l.delta())},
           {"gamma", to_json(l.gamma())}};
    emit(opt, j,
         "cocompact lattice over Q(sqrt(-" + std::to_string(l.field().d) + "))\n" +
             "  Delta (rank " + std::to_string(l.delta().rank()) + "):\n" + render_lattice(l.delta()) +
             "  Gamma (rank " + std::to_string(l.gamma().rank()) + "):\n" + render_lattice(l.gamma()));
    return kExitPass;
  } catch (const NotCocompactError& e) {
    Json j{{"cocompact", false}, {"which", e.which}, {"observed_rank", e.observed}, {"required_rank", e.required}};
    emit(opt, j, std::string("not cocompact: ") + e.what() + "\n");
    return kExitFail;
  }
}

Json q_gram_json(const std::vector<std::vector<QuadElem>>& q) {
  Json rows = Json::array();
  for (const auto& r : q) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(to_json(x));
    rows.push_back(row);
  }
  return rows;
}

int cmd_iwasawa_extract(const Options& opt, const std::string& src) {
  auto in = expect_kind<HeisenbergInput>(load_input(src), "heisenberg");
  try {
    IwasawaData data = extract_iwasawa(HeisLattice::validate(in.generators));
    std::string qtext;
    for (const auto& r : data.q_on_basis) {
      qtext += "    [";
      for (std::size_t j = 0; j < r.size(); ++j) qtext += (j ? ", " : "") + r[j].str();
      qtext += "]\n";
    }
    Json j{{"d", data.field.d},
           {"delta", to_json(data.delta)},
           {"gamma", to_json(data.gamma)},
           {"q_on_delta_basis", q_gram_json(data.q_on_basis)}};
    emit(opt, j,
         "Iwasawa bundle data over Q(sqrt(-" + std::to_string(data.field.d) + "))\n  Delta:\n" +
             render_lattice(data.delta) + "  Gamma:\n" + render_lattice(data.gamma) +
             "  q on the Delta basis:\n" + qtext);
    return kExitPass;
  } catch (const NotCocompactError& e) {
    emit(opt, Json{{"cocompact", false}, {"error", e.what()}}, std::string(e.what()) + "\n");
    return kExitFail;
  }
}

int cmd_iwasawa_construct(const Options& opt, const std::string& src) {
  auto in = expect_kind<ConstructInput>(load_input(src), "construct");
  try {
    HeisLattice l = construct_iwasawa(in.delta, in.gamma, in.field);
    Json gens = Json::array();
    for (const auto& g : l.generators())
      gens.push_back(Json{{"a", to_json(g.a)}, {"b", to_json(g.b)}, {"c", to_json(g.c)}});
    Json j{{"constructed", true}, {"d", l.field().d}, {"generators", gens}};
    emit(opt, j,
         "constructed cocompact lattice with " + std::to_string(l.generators().size()) + " generators\n");
    return kExitPass;
  } catch (const CocycleConditionViolated& e) {
    Json j{{"constructed", false},
           {"witness", Json{{"i", e.i}, {"j", e.j}, {"value", to_json(e.value)}}}};
    emit(opt, j,
         "cocycle condition violated: q(basis " + std::to_string(e.i) + ", basis " + std::to_string(e.j) +
             ") = " + e.value.str() + " is not in Gamma\n");
    return kExitFail;
  } catch (const NotCocompactError& e) {
    emit(opt, Json{{"constructed", false}, {"error", e.what()}}, std::string(e.what()) + "\n");
    return kExitFail;
  }
}

int cmd_torus_endos(const Options& opt, const std::string& src) {
  TorusJ t = torus_from_input(expect_kind<TorusInput>(load_input(src), "torus"));
  EndAlgebra alg = endomorphism_algebra(t);
  Json basis = Json::array();
  for (const auto& m : alg.basis) basis.push_back(to_json(m));
  emit(opt, Json{{"g", t.g()}, {"end_dim", alg.dimension()}, {"basis", basis}},
       "dim End(T) tensor Q = " + std::to_string(alg.dimension()) + "\n");
  return kExitPass;
}

int cmd_torus_picard(const Options& opt, const std::string& src) {
  TorusJ t = torus_from_input(expect_kind<TorusInput>(load_input(src), "torus"));
  std::size_t rho = picard_number(t), h = h20_02_dim(t);
  emit(opt, Json{{"g", t.g()}, {"picard", rho}, {"h20_02", h}},
       "rho = " + std::to_string(rho) + ", dim H^{2,0 + 0,2}_Q = " + std::to_string(h) + "\n");
  return kExitPass;
}

int cmd_torus_cm(const Options& opt, const std::string& src) {
  TorusJ t = torus_from_input(expect_kind<TorusInput>(load_input(src), "torus"));
  CMReport r = cm_report(t);
  Json j{{"g", r.g},           {"rho", r.rho},
         {"h20_02", r.h20},    {"end_dim", r.end_dim},
         {"max_picard", r.max_picard}, {"h20_rational", r.h20_rational},
         {"cm_end", r.cm_end}, {"is_cm", r.is_cm},
         {"equivalence_checked", r.equivalence_checked}};
  if (t.g() == 1 && t.klattice()) j["order"] = to_json(endomorphism_order(t));
  std::string text = std::string("CM: ") + (r.is_cm ? "yes" : "no") + "  (rho = " + std::to_string(r.rho) +
                     ", h20 = " + std::to_string(r.h20) + ", end_dim = " + std::to_string(r.end_dim) + ")\n";
  emit(opt, j, text);
  return kExitPass;
}

int cmd_torus_subtori(const Options& opt, unsigned height, const std::string& src) {
  TorusJ t = torus_from_input(expect_kind<TorusInput>(load_input(src), "torus"));
  auto subs = enumerate_elliptic_subtori(t, height);
  Json entries = Json::array();
  std::string text = std::to_string(subs.size()) + " K-lines at height <= " + std::to_string(height) + "\n";
  for (const auto& s : subs) {
    entries.push_back(Json{{"line", Json{{"v1", to_json(s.line.first)}, {"v2", to_json(s.line.second)}}},
                           {"sublattice", to_json(s.sublattice)},
                           {"saturation_index", s.saturation_index.str()},
                           {"curve_lattice", to_json(s.curve_lattice)}});
    text += "  K*(" + s.line.first.str() + ", " + s.line.second.str() + ")  saturation index " +
            s.saturation_index.str() + "\n";
  }
  emit(opt, Json{{"height", height}, {"lines", entries}}, text);
  return kExitPass;
}

int cmd_cohomology_betti(const Options& opt, const std::string& src) {
  auto in = expect_kind<CEInput>(load_input(src), "ce-algebra");
  CEAlgebra a = CEAlgebra::create(in.generators, in.dgens);
  auto b = a.betti();
  std::string text;
  for (std::size_t i = 0; i < b.size(); ++i) text += (i ? " " : "") + std::to_string(b[i]);
  emit(opt, Json{{"betti", b}}, text + "\n");
  return kExitPass;
}

int cmd_cohomology_frolicher(const Options& opt, unsigned rmax, const std::string& src) {
  auto in = expect_kind<CEInput>(load_input(src), "ce-algebra");
  CEAlgebra a = CEAlgebra::create(in.generators, in.dgens);
  auto pages = a.frolicher_pages(rmax);
  Json jpages = Json::array();
  std::string text;
  for (std::size_t r = 0; r < pages.size(); ++r) {
    std::size_t total = 0;
    Json rows = Json::array();
    for (const auto& row : pages[r]) {
      rows.push_back(row);
      for (auto v : row) total += v;
    }
    jpages.push_back(Json{{"r", r + 1}, {"dims", rows}, {"total", total}});
    text += "E_" + std::to_string(r + 1) + " total " + std::to_string(total) + "\n";
    for (std::size_t p = 0; p < pages[r].size(); ++p) {
      text += "  p=" + std::to_string(p) + ":";
      for (auto v : pages[r][p]) text += " " + std::to_string(v);
      text += "\n";
    }
  }
  emit(opt, Json{{"pages", jpages}}, text);
  return kExitPass;
}

int cmd_chern_check(const Options& opt, unsigned height, const std::string& src) {
  auto in = expect_kind<HeisenbergInput>(load_input(src), "heisenberg");
  IwasawaData data = extract_iwasawa(HeisLattice::validate(in.generators));
  CocycleForm c = CocycleForm::standard(data);
  TypeCertificate type = verify_holomorphic_type(c);
  TorusJ t = TorusJ::from_klattice(data.delta, data.field);
  auto subs = enumerate_elliptic_subtori(t, height);
  Json restrictions = Json::array();
  bool all_zero = true;
  for (const auto& s : subs) {
    RestrictedForm r = restrict_to_subtorus(c, s.sublattice);
    all_zero = all_zero && r.zero;
    restrictions.push_back(Json{{"line", Json{{"v1", to_json(s.line.first)}, {"v2", to_json(s.line.second)}}},
                                {"zero", r.zero}});
  }
  bool pass = type.pass() && all_zero;
  Json j{{"type_check", type.k_bilinear && type.alternating},
         {"nondegenerate", type.nondegenerate},
         {"restrictions", restrictions},
         {"pass", pass}};
  emit(opt, j,
       std::string("holomorphic type: ") + (type.pass() ? "pass" : "fail") + ", restrictions to " +
           std::to_string(subs.size()) + " K-lines all zero: " + (all_zero ? "yes" : "no") + "\n");
  return pass ? kExitPass : kExitFail;
}

int cmd_verify(const Options& opt, const std::string& which, unsigned height, const std::string& src) {
  auto in = expect_kind<HeisenbergInput>(load_input(src), "heisenberg");
  HeisLattice l = HeisLattice::validate(in.generators);
  std::vector<VerificationReport> reports;
  if (which == "all") {
    reports = run_all_checks(l, height);
  } else if (which == "construct-roundtrip") {
    IwasawaData d = extract_iwasawa(l);
    reports.push_back(check_construct_roundtrip(d.delta, d.gamma, d.field));
  } else if (which == "maximal-picard") {
    reports.push_back(check_maximal_picard(l));
  } else if (which == "cm-fields") {
    reports.push_back(check_cm_fields(l));
  } else if (which == "subtorus-splitting") {
    reports.push_back(check_subtorus_splitting(l, height));
  } else if (which == "de-rham-model") {
    reports.push_back(check_de_rham_model(l));
  } else {
    throw CLI::ValidationError("verify", "unknown check \"" + which + "\"");
  }
  bool all = true;
  Json jr = Json::array();
  std::string text;
  for (const auto& r : reports) {
    all = all && r.pass;
    jr.push_back(r.to_json());
    text += (r.pass ? "PASS  " : "FAIL  ") + r.check + "  (" + r.claim + ")\n";
  }
  emit(opt, Json{{"pass", all}, {"reports", jr}}, text);
  return all ? kExitPass : kExitFail;
}

int cmd_corpus_list(const Options& opt) {
  Json j = Json::array();
  std::string text;
  for (const auto& n : corpus_names()) {
    j.push_back(n);
    text += n + "\n";
  }
  emit(opt, j, text);
  return kExitPass;
}

int cmd_corpus_emit(const std::string& name) {
  auto it = corpus_documents().find(name);
  if (it == corpus_documents().end()) throw Error("unknown corpus entry \"" + name + "\"");
  std::cout << it->second.dump(2) << "\n";
  return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"exact-arithmetic toolkit for Heisenberg lattices, their torus invariants and nilmanifold cohomology"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "emit reports as JSON");

  std::string src, which, name;
  unsigned subtori_height = 1, chern_height = 1, verify_height = 2, rmax = 4;

  auto* lattice = app.add_subcommand("lattice", "lattice-level operations")->require_subcommand(1);
  auto* lat_validate = lattice->add_subcommand("validate", "validate generators as a cocompact lattice");
  lat_validate->add_option("file", src, "input document or corpus:NAME")->required();

  auto* iwasawa = app.add_subcommand("iwasawa", "bundle data of a lattice")->require_subcommand(1);
  auto* iwa_extract = iwasawa->add_subcommand("extract", "extract (Delta, Gamma, q)");
  iwa_extract->add_option("file", src, "input document or corpus:NAME")->required();
  auto* iwa_construct = iwasawa->add_subcommand("construct", "build a lattice from (Delta, Gamma, d)");
  iwa_construct->add_option("file", src, "input document or corpus:NAME")->required();

  auto* torus = app.add_subcommand("torus", "complex torus invariants")->require_subcommand(1);
  auto* t_endos = torus->add_subcommand("endos", "endomorphism algebra");
  t_endos->add_option("file", src)->required();
  auto* t_picard = torus->add_subcommand("picard", "Picard number and rational (2,0)+(0,2) dimension");
  t_picard->add_option("file", src)->required();
  auto* t_cm = torus->add_subcommand("cm", "complex multiplication report");
  t_cm->add_option("file", src)->required();
  auto* t_subtori = torus->add_subcommand("subtori", "elliptic subtori at bounded height");
  t_subtori->add_option("--height", subtori_height, "coordinate height bound");
  t_subtori->add_option("file", src)->required();

  auto* coh = app.add_subcommand("cohomology", "differential graded algebra invariants")->require_subcommand(1);
  auto* c_betti = coh->add_subcommand("betti", "Betti numbers");
  c_betti->add_option("file", src)->required();
  auto* c_frol = coh->add_subcommand("frolicher", "spectral sequence page dimensions");
  c_frol->add_option("--rmax", rmax, "last page to compute");
  c_frol->add_option("file", src)->required();

  auto* chern = app.add_subcommand("chern", "cocycle certificates")->require_subcommand(1);
  auto* ch_check = chern->add_subcommand("check", "holomorphic type and K-line restrictions");
  ch_check->add_option("--height", chern_height, "coordinate height bound");
  ch_check->add_option("file", src)->required();

  auto* verify = app.add_subcommand("verify", "theorem-level verification");
  verify->add_option("check", which, "all or a check name")->required();
  verify->add_option("--height", verify_height, "K-line height bound");
  verify->add_option("file", src, "heisenberg document or corpus:NAME")->required();

  auto* corpus = app.add_subcommand("corpus", "bundled example documents")->require_subcommand(1);
  corpus->add_subcommand("list", "list bundled documents");
  auto* emit_cmd = corpus->add_subcommand("emit", "print one bundled document");
  emit_cmd->add_option("name", name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (lat_validate->parsed()) return cmd_lattice_validate(opt, src);
    if (iwa_extract->parsed()) return cmd_iwasawa_extract(opt, src);
    if (iwa_construct->parsed()) return cmd_iwasawa_construct(opt, src);
    if (t_endos->parsed()) return cmd_torus_endos(opt, src);
    if (t_picard->parsed()) return cmd_torus_picard(opt, src);
    if (t_cm->parsed()) return cmd_torus_cm(opt, src);
    if (t_subtori->parsed()) return cmd_torus_subtori(opt, subtori_height, src);
    if (c_betti->parsed()) return cmd_cohomology_betti(opt, src);
    if (c_frol->parsed()) return cmd_cohomology_frolicher(opt, rmax, src);
    if (ch_check->parsed()) return cmd_chern_check(opt, chern_height, src);
    if (verify->parsed()) return cmd_verify(opt, which, verify_height, src);
    if (corpus->get_subcommand("list")->parsed()) return cmd_corpus_list(opt);
    if (emit_cmd->parsed()) return cmd_corpus_emit(name);
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
