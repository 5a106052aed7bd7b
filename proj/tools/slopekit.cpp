#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "slopekit/commands.hpp"

namespace {

using namespace slopekit;

struct Range {
  std::int64_t lo, hi;
};

Range parse_range(const std::string& flag, const std::string& text) {
  const auto colon = text.find(':');
  const std::string field = "--" + flag;
  if (colon == std::string::npos) {
    const auto v = config_detail::to_int64(field, text);
    return {v, v};
  }
  return {config_detail::to_int64(field, text.substr(0, colon)), config_detail::to_int64(field, text.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants and Bogomolov-type bounds for bundles on ruled surfaces and covers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  OutputOptions opt;
  app.add_option("--config", config_path, "scenario file (INI)");
  app.add_flag("--csv", opt.csv, "CSV output, exact values only");
  app.add_flag("--quiet", opt.quiet, "one-line summaries, no warnings");

  auto* invariants = app.add_subcommand("invariants", "invariant table for [bundle], [cover] or [family]");

  std::string bound;
  auto* check = app.add_subcommand("check", "evaluate one bound; exit 0 iff satisfied");
  check->add_option("bound", bound, "main, balanced, e-positive, moriwaki, hodge, chi0max, chikmax, kf2-decomposition, primcyc")
      ->required();

  std::string n_range, g_range;
  auto* table = app.add_subcommand("table", "CSV grid of the bound functions");
  table->add_option("--n", n_range, "n range lo:hi");
  table->add_option("--g", g_range, "g range lo:hi");

  std::string c1_sq, target, m_range, b1_range;
  auto* falsify = app.add_subcommand("falsify", "search the split rank-2 family for a discriminant below a target");
  falsify->add_option("--c1-sq", c1_sq, "fixed c1^2");
  falsify->add_option("--target", target, "discriminant target");
  falsify->add_option("--m", m_range, "m range lo:hi");
  falsify->add_option("--b1", b1_range, "b1 range lo:hi");

  std::optional<int> seg_n, seg_e;
  std::optional<std::int64_t> seg_g;
  auto* segre = app.add_subcommand("segre", "nodal-curve construction with balanced splitting");
  segre->add_option("--n", seg_n, "gonality");
  segre->add_option("--g", seg_g, "genus");
  segre->add_option("--e", seg_e, "Hirzebruch invariant");

  auto* family = app.add_subcommand("family", "run the [family] pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;

  Scenario sc;
  const bool needs_config = invariants->parsed() || check->parsed() || family->parsed();
  if (needs_config && config_path.empty()) {
    err << "error: --config is required for this command\n";
    return exit_usage;
  }
  if (!config_path.empty()) {
    const int rc = guarded(err, [&] {
      sc = load_scenario(config_path);
      return int{exit_ok};
    });
    if (rc != exit_ok) return rc;
  }

  if (invariants->parsed()) return cmd_invariants(sc, opt, out, err);
  if (check->parsed()) return cmd_check(sc, bound, opt, out, err);
  if (family->parsed()) return cmd_family(sc, opt, out, err);

  if (table->parsed()) {
    std::optional<TableSection> t = sc.table;
    const int rc = guarded(err, [&] {
      if (!n_range.empty() || !g_range.empty()) {
        require(!n_range.empty() && !g_range.empty(), ErrorKind::invalid_input, "usage", "table needs both --n and --g");
        const auto n = parse_range("n", n_range);
        const auto g = parse_range("g", g_range);
        t = TableSection{static_cast<int>(n.lo), static_cast<int>(n.hi), g.lo, g.hi};
      }
      require(t.has_value(), ErrorKind::invalid_input, "usage", "table needs --n and --g or a [table] section");
      return int{exit_ok};
    });
    if (rc != exit_ok) return rc;
    return cmd_table(*t, opt, out, err);
  }

  if (falsify->parsed()) {
    std::optional<FalsifySection> f = sc.falsify;
    const int rc = guarded(err, [&] {
      if (!c1_sq.empty() || !target.empty()) {
        require(!c1_sq.empty() && !target.empty(), ErrorKind::invalid_input, "usage",
                "falsify needs both --c1-sq and --target");
        f = FalsifySection{config_detail::to_rational("--c1-sq", c1_sq), config_detail::to_rational("--target", target),
                           f ? f->box : FalsifyBox{}};
      }
      require(f.has_value(), ErrorKind::invalid_input, "usage", "falsify needs --c1-sq/--target or a [falsify] section");
      if (!m_range.empty()) {
        const auto r = parse_range("m", m_range);
        f->box.m_lo = r.lo;
        f->box.m_hi = r.hi;
      }
      if (!b1_range.empty()) {
        const auto r = parse_range("b1", b1_range);
        f->box.b1_lo = r.lo;
        f->box.b1_hi = r.hi;
      }
      return int{exit_ok};
    });
    if (rc != exit_ok) return rc;
    return cmd_falsify(*f, opt, out, err);
  }

  if (segre->parsed()) {
    std::optional<SegreSpec> s = sc.segre;
    if (seg_n || seg_g || seg_e) {
      if (!(seg_n && seg_g && seg_e)) {
        err << "error: usage: segre needs --n, --g and --e together\n";
        return exit_usage;
      }
      s = SegreSpec{*seg_n, *seg_g, *seg_e};
    }
    if (!s) {
      err << "error: usage: segre needs --n/--g/--e or a [segre] section\n";
      return exit_usage;
    }
    return cmd_segre(*s, opt, out, err);
  }
  return exit_usage;
}
