#pragma once

// Subcommand bodies. Each writes to the given streams and returns the exit
// code: 0 success or satisfied, 1 violated / nothing found, 2 usage or input
// error, 3 internal inconsistency.

#include <functional>
#include <ostream>
#include <string>

#include "slopekit/config.hpp"
#include "slopekit/render.hpp"

namespace slopekit {

enum ExitCode : int { exit_ok = 0, exit_violated = 1, exit_usage = 2, exit_inconsistent = 3 };

inline int exit_code_for(ErrorKind k) { return k == ErrorKind::inconsistency ? exit_inconsistent : exit_usage; }

/// Runs `body`, mapping library errors to exit codes with a one-line
/// diagnostic on `err`.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << (e.kind() == ErrorKind::inconsistency ? "internal inconsistency: " : "error: ") << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return exit_inconsistent;
  }
}

namespace command_detail {

inline void bundle_rows(Sheet& sh, const SurfaceModel& s, const BundleData& b) {
  const std::string sec = "bundle";
  sh.add_text(sec, "surface", "b=" + std::to_string(s.base_genus()) + " e=" + std::to_string(s.invariant_e()));
  sh.add(sec, "rank", Rational(b.rank()));
  sh.add_text(sec, "c1", to_string(b.c1()));
  sh.add(sec, "c1^2", b.c1_squared(s));
  sh.add(sec, "c2", b.c2());
  sh.add(sec, "discriminant", moriwaki_discriminant(s, b));
  if (!b.splitting_type()) return;
  const auto& t = *b.splitting_type();
  sh.add_text(sec, "splitting type", to_string(t));
  const auto a = detail::sum_of(t);
  if (a <= 0) return;
  if (s.invariant_e() <= 0) sh.add(sec, "main bound", main_bound_rhs(s, b));
  const auto p = balanced_decompose(b.rank(), a);
  if (!is_balanced(t) || p.k < 1) return;
  sh.add(sec, "balanced bound", balanced_bound_rhs(s, b, p.m, p.k));
  if (s.invariant_e() > 0 && a >= 2 && c1_dot_c0_hypothesis(s, b))
    sh.add(sec, "e>0 bound", e_positive_bound_rhs(s, b, p.m, p.k));
}

inline void cover_rows(Sheet& sh, const CoverData& d) {
  const std::string sec = "cover";
  const int n = d.degree_n();
  const auto g = d.fiber_genus_g();
  sh.add(sec, "n", Rational(n));
  sh.add(sec, "g", Rational(g));
  sh.add(sec, "b", Rational(d.base_genus_b()));
  sh.add(sec, "e", Rational(d.surface().invariant_e()));
  sh.add_text(sec, "c1(E)", to_string(tschirn_c1(d)));
  sh.add(sec, "c1^2", d.c1_sq());
  sh.add(sec, "c2", d.c2());
  const BundleData E(n - 1, tschirn_c1(d), d.c2());
  sh.add(sec, "discriminant of E", moriwaki_discriminant(d.surface(), E));
  sh.add(sec, "chi(O_S)", chi_structure_sheaf(d));
  const Rational chif = chi_f(d);
  sh.add(sec, "chi_f", chif);
  if (chi_f_from_chi_structure(d) != chif)
    fail(ErrorKind::inconsistency, "chi-f-mismatch", "chi_f differs from chi(O_S) - (g-1)(b-1)");
  const auto h = hodge_upper_bounds(d);
  if (d.ksy_sq()) {
    sh.add(sec, "K_{S/Y}^2", *d.ksy_sq());
    sh.add(sec, "K_f^2", kf2(d));
    if (chif > 0) sh.add(sec, "slope", slope(d));
    sh.add(sec, "Lambda_pi^2", lambda_pi_sq(d));
  }
  sh.add(sec, "K_{S/Y}^2 upper bound", h.ksy_bound);
  sh.add(sec, "Lambda_pi^2 upper bound", h.lambda_bound);
  if (h.ok) sh.add_bool(sec, "upper bounds hold", *h.ok);
  sh.add(sec, "F(n,g)", stankova_F(n, g));
  sh.add(sec, "chi0_max", chi0_max(d));
  if (d.ksy_sq() && chi0_max(d) != 0) sh.add(sec, "slope bound F(n,g) + Lambda^2/chi0_max", bound_slope_divisible(d));
  const auto p = section4_mk(n, g);
  sh.add(sec, "m (g+n-1 = (n-1)m + k)", Rational(p.m));
  sh.add(sec, "k", Rational(p.k));
  const auto q = chi_k_max_mk(n, g);
  sh.add(sec, "chi_k_max", chi_k_max(d, q.m, q.k));
  if (p.k >= 1 && p.k <= n - 2) {
    sh.add(sec, "F(n,g,k)", stankova_Fk(n, g, p.k, c0_sign(d.surface())));
    if (d.ksy_sq() && chi_k_max(d, p.m, p.k) != 0) sh.add(sec, "slope bound F(n,g,k) + Lambda^2/chi_k_max", bound_slope_k(d, p.m, p.k));
  }
}

inline void finish(std::ostream& out, const Sheet& sh, const OutputOptions& opt, const std::string& summary) {
  if (opt.quiet && !opt.csv)
    out << summary << '\n';
  else
    sh.write(out, opt);
}

}  // namespace command_detail

inline int cmd_invariants(const Scenario& sc, const OutputOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Sheet sh;
    std::vector<std::string> notes;
    if (sc.family) {
      const auto r = resolve_family(*sc.family);
      sh.add_text("family", "kind", r.kind);
      if (r.bundle) command_detail::bundle_rows(sh, r.surface, *r.bundle);
      if (r.cover) command_detail::cover_rows(sh, *r.cover);
      for (const auto& [label, v] : r.extras) sh.add("family", label, v);
      notes = r.notes;
    }
    if (sc.bundle) {
      Scenario only;
      only.surface = sc.surface;
      only.bundle = sc.bundle;
      const auto [s, b] = scenario_bundle(only);
      command_detail::bundle_rows(sh, s, b);
    }
    if (sc.cover) {
      Scenario only;
      only.surface = sc.surface;
      only.cover = sc.cover;
      command_detail::cover_rows(sh, scenario_cover(only));
    }
    require(!sh.empty(), ErrorKind::invalid_input, "config", "nothing to compute: need [bundle], [cover] or [family]");
    for (const auto& n : notes) sh.add_text("notes", "note", n);
    command_detail::finish(out, sh, opt, "ok");
    if (!opt.quiet)
      for (const auto& n : notes)
        if (n.rfind("warning", 0) == 0) err << n << '\n';
    return int{exit_ok};
  });
}

inline int cmd_family(const Scenario& sc, const OutputOptions& opt, std::ostream& out, std::ostream& err) {
  if (!sc.family) {
    err << "error: config: family: section required\n";
    return exit_usage;
  }
  Scenario only;
  only.family = sc.family;
  return cmd_invariants(only, opt, out, err);
}

inline const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names = {"main",    "balanced", "e-positive", "moriwaki",          "hodge",
                                                 "chi0max", "chikmax",  "kf2-decomposition", "primcyc"};
  return names;
}

namespace command_detail {

inline ReplayInput replay_input(const SurfaceModel& s, const BundleData& b, const ReplaySection& rs) {
  require(b.splitting_type().has_value(), ErrorKind::invalid_input, "config",
          "replay: the bundle needs splitting_type");
  return {s, *b.splitting_type(), b.c1().fiber_coeff, rs.alpha, rs.z_length, rs.quotient_slack};
}

inline int report_exit(const BoundReport& r) { return r.satisfied && r.checks_pass() ? exit_ok : exit_violated; }

inline int check_primcyc(const Scenario& sc, const OutputOptions& opt, std::ostream& out, std::ostream& err) {
  int n;
  std::int64_t g;
  std::optional<CoverData> cover;
  if (sc.primcyc) {
    n = sc.primcyc->n;
    g = sc.primcyc->g;
  } else {
    cover = scenario_cover(sc);
    n = cover->degree_n();
    g = cover->fiber_genus_g();
  }
  const auto f = primcyc_bound(n, g);
  Sheet sh;
  const std::string sec = "primcyc";
  sh.add(sec, "n", Rational(n));
  sh.add(sec, "g", Rational(g));
  sh.add(sec, "form1 24(g-1)(n-1)/(n^2+4ng-3n+2-2g)", f.form1);
  sh.add(sec, "form2 6-6/(2n-1)-12n(n^2-1)/(2g(2n-1)+(n-1)(n-2))", f.form2);
  sh.add_bool(sec, "forms agree", f.agree);
  int code = exit_ok;
  std::string summary = "primcyc: form1 " + to_string(f.form1) + ", form2 " + to_string(f.form2);
  if (cover && cover->ksy_sq() && chi_f(*cover) > 0) {
    const Rational s = slope(*cover);
    sh.add(sec, "slope", s);
    sh.add_text(sec, "verdict (slope >= form1)", s >= f.form1 ? "satisfied" : "violated");
    if (s < f.form1) code = exit_violated;
  }
  if (!f.agree) {
    sh.add_text(sec, "warning", "printed forms disagree; form1 is used for comparisons");
    summary += " (warning: forms disagree)";
    if (!opt.quiet) err << "warning: primcyc printed forms disagree at n=" << n << ", g=" << g << '\n';
  }
  finish(out, sh, opt, summary);
  return code;
}

}  // namespace command_detail

inline int cmd_check(const Scenario& sc, const std::string& bound, const OutputOptions& opt, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&]() -> int {
    using namespace command_detail;
    const auto& names = bound_names();
    if (std::find(names.begin(), names.end(), bound) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      fail(ErrorKind::invalid_input, "unknown-bound", "unknown bound '" + bound + "' (expected one of " + list + ")");
    }
    if (bound == "primcyc") return check_primcyc(sc, opt, out, err);

    BoundReport rep;
    std::optional<BoundReport> replay;
    if (bound == "main" || bound == "balanced" || bound == "e-positive" || bound == "moriwaki") {
      const auto [s, b] = scenario_bundle(sc);
      if (bound == "main") {
        rep = check_main(s, b, sc.flags);
        if (sc.replay) {
          replay = replay_main_theorem(replay_input(s, b, *sc.replay));
          if (replay->rhs != rep.rhs)
            fail(ErrorKind::inconsistency, "replay-endpoint", "replay closed form differs from the bound");
        }
      } else if (bound == "balanced") {
        rep = check_balanced(s, b, sc.flags);
      } else if (bound == "e-positive") {
        rep = check_e_positive(s, b, sc.flags);
        if (sc.replay) {
          const auto p = balanced_decompose(b.rank(), detail::sum_of(*b.splitting_type()));
          replay = e_positive_replay(replay_input(s, b, *sc.replay), p.m, p.k);
          if (replay->rhs != rep.rhs)
            fail(ErrorKind::inconsistency, "replay-endpoint", "replay final bound differs from the bound");
        }
      } else {
        rep = check_moriwaki(s, b, sc.flags);
      }
    } else {
      const CoverData d = scenario_cover(sc);
      if (bound == "hodge")
        rep = check_hodge(d);
      else if (bound == "chi0max")
        rep = check_chi0max(d);
      else if (bound == "chikmax")
        rep = check_chikmax(d);
      else
        rep = check_kf2_decomposition(d);
    }

    Sheet sh;
    append_report(sh, rep, bound);
    if (replay) append_report(sh, *replay, bound + " replay");
    std::string summary = bound + ": " + verdict_text(rep);
    if (!rep.checks_pass()) summary += " (check failed)";
    finish(out, sh, opt, summary);
    if (!opt.quiet && !rep.hypotheses_hold())
      err << "note: not all hypotheses hold; the verdict is informational\n";
    return report_exit(rep);
  });
}

inline int cmd_table(const TableSection& t, const OutputOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(t.n_lo <= t.n_hi && t.g_lo <= t.g_hi, ErrorKind::invalid_input, "empty-grid", "table grid is empty");
    require(t.n_lo >= 2 && t.g_lo >= 2, ErrorKind::invalid_input, "grid-range", "table needs n >= 2 and g >= 2");
    CsvTable table({"n", "g", "k", "e_sign", "F_ng", "F_ngk", "chi0max_coeff", "chikmax_coeff", "primcyc_form1",
                    "primcyc_form2", "primcyc_mismatch"});
    std::size_t mismatches = 0;
    for (int n = t.n_lo; n <= t.n_hi; ++n)
      for (std::int64_t g = t.g_lo; g <= t.g_hi; ++g) {
        const auto p = section4_mk(n, g);
        const auto q = chi_k_max_mk(n, g);
        const auto pc = primcyc_bound(n, g);
        if (!pc.agree) ++mismatches;
        for (C0Sign sign : {C0Sign::nonnegative, C0Sign::negative}) {
          const bool has_k = p.k >= 1 && p.k <= n - 2;
          table.add_row({std::to_string(n), std::to_string(g), std::to_string(p.k),
                         sign == C0Sign::nonnegative ? "ge0" : "lt0", to_string(stankova_F(n, g)),
                         has_k ? to_string(stankova_Fk(n, g, p.k, sign)) : "",
                         to_string(chi0_max_coefficient(n, g)),
                         to_string(chi_k_max_coefficient(n, g, q.m, q.k, sign)), to_string(pc.form1),
                         to_string(pc.form2), pc.agree ? "false" : "true"});
        }
      }
    table.write(out);
    if (!opt.quiet && mismatches)
      err << "warning: primcyc printed forms disagree at " << mismatches << " (n,g) points\n";
    return int{exit_ok};
  });
}

inline int cmd_falsify(const FalsifySection& f, const OutputOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto w = falsify_search(f.c1_sq, f.target, f.box);
    Sheet sh;
    const std::string sec = "falsify";
    sh.add(sec, "c1^2", f.c1_sq);
    sh.add(sec, "target", f.target);
    if (!w) {
      sh.add_text(sec, "witness", "none");
      command_detail::finish(out, sh, opt, "none");
      return int{exit_violated};
    }
    const SurfaceModel Y = SurfaceModel::p1xp1();
    sh.add(sec, "m", Rational(w->m));
    sh.add(sec, "b1", Rational(w->b1));
    sh.add(sec, "b2", Rational(w->b2));
    sh.add(sec, "c2", w->bundle.c2());
    sh.add(sec, "discriminant", w->discriminant);
    const Rational step =
        moriwaki_discriminant(Y, falsification_family(w->m, w->b1 + 1, w->b2 - 1)) - w->discriminant;
    sh.add(sec, "discriminant change per unit b1", step);
    command_detail::finish(out, sh, opt,
                           "witness m=" + std::to_string(w->m) + " b1=" + std::to_string(w->b1) +
                               " b2=" + std::to_string(w->b2) + " discriminant=" + to_string(w->discriminant));
    return int{exit_ok};
  });
}

inline int cmd_segre(const SegreSpec& spec, const OutputOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto s = segre_solve(spec);
    const int n = spec.gonality_n;
    if (!segre_constraints_hold(n, spec.invariant_e, spec.target_genus_g, s.h, s.delta_nodes))
      fail(ErrorKind::inconsistency, "segre-recheck", "solution fails the constraint re-check");
    Sheet sh;
    const std::string sec = "segre";
    sh.add(sec, "n", Rational(n));
    sh.add(sec, "g", Rational(spec.target_genus_g));
    sh.add(sec, "e", Rational(spec.invariant_e));
    sh.add(sec, "h", Rational(s.h));
    sh.add(sec, "nodes", Rational(s.delta_nodes));
    sh.add(sec, "g_{n,h}", Rational(s.numbers.g_nh));
    sh.add(sec, "dim of linear system", Rational(s.numbers.dim_sigma));
    sh.add_text(sec, "interval",
                "[" + std::to_string(s.numbers.interval_lo) + ", " + std::to_string(s.numbers.interval_hi) + "]");
    sh.add(sec, "m (g = (n-1)m + k)", Rational(s.m));
    sh.add(sec, "k", Rational(s.k));
    sh.add_text(sec, "splitting", to_string(s.splitting));
    sh.add_bool(sec, "k boundary", s.k_boundary);
    for (std::int64_t v = 0; v <= s.m; ++v)
      sh.add(sec, "h0(omega(-" + std::to_string(v) + "D))", Rational(segre_h0(n, spec.target_genus_g, v)));
    command_detail::finish(out, sh, opt,
                           "h=" + std::to_string(s.h) + " nodes=" + std::to_string(s.delta_nodes) +
                               " splitting=" + to_string(s.splitting));
    return int{exit_ok};
  });
}

}  // namespace slopekit
