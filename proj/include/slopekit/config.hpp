#pragma once

// Scenario files: flat INI, one section per entity.
//
//   [surface]   base_genus, e
//   [bundle]    rank, c1 = "a d" (a C0 + d L), c2, splitting_type = "1,2,4"
//   [cover]     degree_n, fiber_genus_g, c1_sq, c2, ksy_sq
//   [flags]     generically_nef, fiber_semistable, maroni_general
//   [replay]    alpha, z_length, quotient_slack
//   [family]    kind = triproduct | base_curve | cyclic | falsification
//               plus n1 n2 n3 | n base_genus | n a_class | m b1 b2
//   [primcyc]   n, g
//   [falsify]   c1_sq, target, m_lo, m_hi, b1_lo, b1_hi
//   [segre]     n, g, e
//   [table]     n_lo, n_hi, g_lo, g_hi
//
// Rationals are "p/q" or integers. Unknown sections and keys are rejected.

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "slopekit/families.hpp"

namespace slopekit {

struct BundleSection {
  int rank;
  DivClass c1;
  Rational c2;
  std::optional<SplittingType> splitting;
};

struct CoverSection {
  int degree_n;
  int fiber_genus_g;
  Rational c1_sq;
  Rational c2;
  std::optional<Rational> ksy_sq;
};

struct ReplaySection {
  Rational alpha;
  Rational z_length{0};
  Rational quotient_slack{0};
};

struct FamilySection {
  std::string kind;
  std::map<std::string, std::string> params;
};

struct PrimcycSection {
  int n;
  std::int64_t g;
};

struct FalsifySection {
  Rational c1_sq;
  Rational target;
  FalsifyBox box;
};

struct TableSection {
  int n_lo, n_hi;
  std::int64_t g_lo, g_hi;
};

struct Scenario {
  std::optional<SurfaceModel> surface;
  std::optional<BundleSection> bundle;
  std::optional<CoverSection> cover;
  AssertedFlags flags;
  std::optional<ReplaySection> replay;
  std::optional<FamilySection> family;
  std::optional<PrimcycSection> primcyc;
  std::optional<FalsifySection> falsify;
  std::optional<SegreSpec> segre;
  std::optional<TableSection> table;
};

namespace config_detail {

namespace pt = boost::property_tree;

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  fail(ErrorKind::invalid_input, "config", field + ": " + what);
}

inline std::int64_t to_int64(const std::string& field, std::string_view text) {
  text = detail::trim(text);
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || p != end) field_error(field, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

inline int to_int(const std::string& field, std::string_view text) {
  const auto v = to_int64(field, text);
  if (v < -1'000'000 || v > 1'000'000) field_error(field, "integer out of range");
  return static_cast<int>(v);
}

inline Rational to_rational(const std::string& field, std::string_view text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    field_error(field, e.what());
  }
}

inline bool to_bool(const std::string& field, std::string_view text) {
  const std::string t(detail::trim(text));
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  field_error(field, "expected true or false, got '" + t + "'");
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline DivClass to_class(const std::string& field, std::string_view text) {
  const auto parts = split_list(text);
  if (parts.size() != 2) field_error(field, "expected two rationals 'a d' for a C0 + d L");
  return {to_rational(field, parts[0]), to_rational(field, parts[1])};
}

inline SplittingType to_splitting(const std::string& field, std::string_view text) {
  SplittingType t;
  for (const auto& w : split_list(text)) t.push_back(to_int64(field, w));
  if (t.empty()) field_error(field, "empty splitting type");
  return t;
}

/// Key access for one section, rejecting keys not in `allowed`.
class SectionReader {
 public:
  SectionReader(std::string name, const pt::ptree& tree, std::set<std::string> allowed)
      : name_(std::move(name)), tree_(tree) {
    for (const auto& [key, child] : tree_) {
      if (!child.empty()) field_error(name_ + "." + key, "nested keys are not supported");
      if (!allowed.count(key)) field_error(name_ + "." + key, "unknown key");
    }
  }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  std::optional<std::string> raw(const std::string& key) const {
    if (auto v = tree_.get_optional<std::string>(key)) return *v;
    return std::nullopt;
  }

  std::string need(const std::string& key) const {
    auto v = raw(key);
    if (!v) field_error(field(key), "missing");
    return *v;
  }

  int need_int(const std::string& key) const { return to_int(field(key), need(key)); }
  std::int64_t need_int64(const std::string& key) const { return to_int64(field(key), need(key)); }
  Rational need_rational(const std::string& key) const { return to_rational(field(key), need(key)); }

  std::optional<Rational> opt_rational(const std::string& key) const {
    if (auto v = raw(key)) return to_rational(field(key), *v);
    return std::nullopt;
  }
  bool opt_bool(const std::string& key) const {
    if (auto v = raw(key)) return to_bool(field(key), *v);
    return false;
  }
  std::int64_t opt_int64(const std::string& key, std::int64_t fallback) const {
    if (auto v = raw(key)) return to_int64(field(key), *v);
    return fallback;
  }

  const pt::ptree& tree() const { return tree_; }

 private:
  std::string name_;
  const pt::ptree& tree_;
};

inline Scenario build(const pt::ptree& root) {
  Scenario sc;
  for (const auto& [name, sec] : root) {
    if (sec.empty() && !sec.data().empty()) field_error(name, "key outside a section");
    if (name == "surface") {
      SectionReader r(name, sec, {"base_genus", "e"});
      const int b = r.need_int("base_genus");
      const int e = r.need_int("e");
      try {
        sc.surface = SurfaceModel(b, e);
      } catch (const Error& err) {
        field_error("surface", err.what());
      }
    } else if (name == "bundle") {
      SectionReader r(name, sec, {"rank", "c1", "c2", "splitting_type"});
      BundleSection b{r.need_int("rank"), to_class(r.field("c1"), r.need("c1")), r.need_rational("c2"), std::nullopt};
      if (auto t = r.raw("splitting_type")) b.splitting = to_splitting(r.field("splitting_type"), *t);
      sc.bundle = b;
    } else if (name == "cover") {
      SectionReader r(name, sec, {"degree_n", "fiber_genus_g", "c1_sq", "c2", "ksy_sq"});
      sc.cover = CoverSection{r.need_int("degree_n"), r.need_int("fiber_genus_g"), r.need_rational("c1_sq"),
                              r.need_rational("c2"), r.opt_rational("ksy_sq")};
    } else if (name == "flags") {
      SectionReader r(name, sec, {"generically_nef", "fiber_semistable", "maroni_general"});
      sc.flags = {r.opt_bool("generically_nef"), r.opt_bool("fiber_semistable"), r.opt_bool("maroni_general")};
    } else if (name == "replay") {
      SectionReader r(name, sec, {"alpha", "z_length", "quotient_slack"});
      sc.replay = ReplaySection{r.need_rational("alpha"), r.opt_rational("z_length").value_or(Rational(0)),
                                r.opt_rational("quotient_slack").value_or(Rational(0))};
    } else if (name == "family") {
      SectionReader r(name, sec, {"kind", "n1", "n2", "n3", "n", "base_genus", "a_class", "m", "b1", "b2"});
      FamilySection f{std::string(detail::trim(r.need("kind"))), {}};
      for (const auto& [key, child] : sec)
        if (key != "kind") f.params[key] = child.data();
      sc.family = f;
    } else if (name == "primcyc") {
      SectionReader r(name, sec, {"n", "g"});
      sc.primcyc = PrimcycSection{r.need_int("n"), r.need_int64("g")};
    } else if (name == "falsify") {
      SectionReader r(name, sec, {"c1_sq", "target", "m_lo", "m_hi", "b1_lo", "b1_hi"});
      FalsifyBox box;
      box = {r.opt_int64("m_lo", box.m_lo), r.opt_int64("m_hi", box.m_hi), r.opt_int64("b1_lo", box.b1_lo),
             r.opt_int64("b1_hi", box.b1_hi)};
      sc.falsify = FalsifySection{r.need_rational("c1_sq"), r.need_rational("target"), box};
    } else if (name == "segre") {
      SectionReader r(name, sec, {"n", "g", "e"});
      sc.segre = SegreSpec{r.need_int("n"), r.need_int64("g"), r.need_int("e")};
    } else if (name == "table") {
      SectionReader r(name, sec, {"n_lo", "n_hi", "g_lo", "g_hi"});
      sc.table = TableSection{r.need_int("n_lo"), r.need_int("n_hi"), r.need_int64("g_lo"), r.need_int64("g_hi")};
    } else {
      field_error(name, "unknown section");
    }
  }
  return sc;
}

}  // namespace config_detail

inline Scenario parse_scenario(std::istream& in, const std::string& source = "<input>") {
  boost::property_tree::ptree root;
  try {
    boost::property_tree::ini_parser::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::invalid_input, "config", source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return config_detail::build(root);
}

inline Scenario parse_scenario_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::invalid_input, "config", "cannot open '" + path + "'");
  return parse_scenario(in, path);
}

// ---------------------------------------------------------------------------
// Resolving a scenario into library objects

inline SurfaceModel scenario_surface(const Scenario& sc) {
  require(sc.surface.has_value(), ErrorKind::invalid_input, "config", "surface: section required");
  return *sc.surface;
}

namespace config_detail {

inline const std::string& param(const FamilySection& f, const std::string& key) {
  auto it = f.params.find(key);
  if (it == f.params.end()) field_error("family." + key, "missing for kind " + f.kind);
  return it->second;
}

inline int param_int(const FamilySection& f, const std::string& key) {
  return to_int("family." + key, param(f, key));
}

}  // namespace config_detail

/// Everything a family pipeline yields, in a common shape.
struct ResolvedFamily {
  std::string kind;
  SurfaceModel surface;
  std::optional<BundleData> bundle;
  std::optional<CoverData> cover;
  std::vector<std::pair<std::string, Rational>> extras;
  std::vector<std::string> notes;
};

inline ResolvedFamily resolve_family(const FamilySection& f) {
  using config_detail::param;
  using config_detail::param_int;
  if (f.kind == "triproduct") {
    const auto t = triproduct_family({param_int(f, "n1"), param_int(f, "n2"), param_int(f, "n3")});
    ResolvedFamily r{f.kind, t.cover.surface(), t.bundle, t.cover, {}, {}};
    r.extras = {{"F(n,g)", stankova_F(t.cover.degree_n(), t.cover.fiber_genus_g())}};
    if (t.derived_extension) r.notes.push_back("derived extension: general multidegree");
    return r;
  }
  if (f.kind == "base_curve") {
    const auto b = base_curve_family(param_int(f, "n"), param_int(f, "base_genus"));
    ResolvedFamily r{f.kind, b.cover.surface(), b.bundle, b.cover, {}, {}};
    r.extras = {{"F(n,g)", stankova_F(b.cover.degree_n(), b.cover.fiber_genus_g())},
                {"printed slope 6-6/(n-1)^2", b.printed_slope}};
    r.notes.push_back(std::string("identity 6-6/(n-1)^2 = F(n,(n-1)^2) + 4(n-2)/(n-1)^2: ") +
                      (b.identity_holds ? "holds" : "FAILS"));
    if (!b.slope_matches_printed)
      r.notes.push_back("warning: computed slope differs from the printed slope 6-6/(n-1)^2");
    return r;
  }
  if (f.kind == "cyclic") {
    SurfaceModel s = SurfaceModel::p1xp1();
    if (auto it = f.params.find("base_genus"); it != f.params.end())
      s = SurfaceModel(config_detail::to_int("family.base_genus", it->second), 0);
    const auto c = cyclic_cover_invariants(
        {param_int(f, "n"), config_detail::to_class("family.a_class", param(f, "a_class")), s});
    ResolvedFamily r{f.kind, s, c.bundle, c.cover, {}, {}};
    const auto pc = primcyc_bound(c.cover.degree_n(), c.cover.fiber_genus_g());
    r.extras = {{"c2 printed n(n-1)(n-2)(3n-1)/12 A^2", c.c2_printed},
                {"primcyc form1", pc.form1},
                {"primcyc form2", pc.form2}};
    if (!c.c2_printed_matches) r.notes.push_back("warning: c2 from the direct sum differs from the printed c2");
    if (!pc.agree) r.notes.push_back("warning: primcyc printed forms disagree");
    return r;
  }
  if (f.kind == "falsification") {
    const BundleData E = falsification_family(param_int(f, "m"), param_int(f, "b1"), param_int(f, "b2"));
    return {f.kind, SurfaceModel::p1xp1(), E, std::nullopt, {}, {}};
  }
  config_detail::field_error("family.kind", "unknown kind '" + f.kind +
                                                "' (expected triproduct, base_curve, cyclic, falsification)");
}

/// The bundle of the scenario: [bundle] on [surface], or the family's.
inline std::pair<SurfaceModel, BundleData> scenario_bundle(const Scenario& sc) {
  if (sc.bundle) {
    const SurfaceModel s = scenario_surface(sc);
    try {
      return {s, BundleData(sc.bundle->rank, sc.bundle->c1, sc.bundle->c2, sc.bundle->splitting)};
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::inconsistency) throw;
      config_detail::field_error("bundle", e.what());
    }
  }
  if (sc.family) {
    auto r = resolve_family(*sc.family);
    if (r.bundle) return {r.surface, *r.bundle};
  }
  fail(ErrorKind::invalid_input, "config", "bundle: no [bundle] section or bundle-producing [family]");
}

inline CoverData scenario_cover(const Scenario& sc) {
  if (sc.cover) {
    const auto& c = *sc.cover;
    try {
      return CoverData(c.degree_n, c.fiber_genus_g, scenario_surface(sc), c.c1_sq, c.c2, c.ksy_sq);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::inconsistency) throw;
      config_detail::field_error("cover", e.what());
    }
  }
  if (sc.family) {
    auto r = resolve_family(*sc.family);
    if (r.cover) return *r.cover;
  }
  fail(ErrorKind::invalid_input, "config", "cover: no [cover] section or cover-producing [family]");
}

}  // namespace slopekit
