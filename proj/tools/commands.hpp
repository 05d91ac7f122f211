#pragma once

// Subcommand implementations.  Each returns a JSON run report and an exit
// code; main.cpp only parses flags and prints.

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ewloci/ewloci.hpp"

namespace ewloci::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kScope = "certified at square-tiled representatives";
inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kDefect = 3, kBudget = 4 };

struct Outcome {
  json report;
  int exit_code = kPass;
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::DisconnectedCover:
    case ErrorKind::NontrivialHolonomy:
    case ErrorKind::EllEven:
    case ErrorKind::NotTransitive:
      return kFail;
    case ErrorKind::RHMismatch:
    case ErrorKind::Defect:
      return kDefect;
    case ErrorKind::BudgetExceeded:
      return kBudget;
    default:
      return kUsage;
  }
}

inline json new_report(const std::string& command, json inputs) {
  return {{"tool", "ewloci"}, {"version", kVersion}, {"command", command}, {"inputs", std::move(inputs)},
          {"checks", json::array()}};
}

inline void add_check(json& r, const std::string& name, bool pass, json detail = json::object()) {
  r["checks"].push_back({{"name", name}, {"pass", pass}, {"detail", std::move(detail)}});
}

inline bool all_checks_pass(const json& r) {
  for (const auto& c : r["checks"]) {
    if (!c["pass"].get<bool>()) return false;
  }
  return true;
}

inline const char* verdict_word(int code) {
  switch (code) {
    case kPass: return "pass";
    case kFail: return "fail";
    case kUsage: return "usage-error";
    case kDefect: return "defect";
    case kBudget: return "budget-exceeded";
  }
  return "unknown";
}

inline void finish(Outcome& o, std::chrono::steady_clock::time_point t0) {
  o.report["verdict"] = verdict_word(o.exit_code);
  o.report["exit_code"] = o.exit_code;
  o.report["wall_clock_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs a command body, turning library errors into reports with the right exit code.
template <class F>
Outcome run_command(const std::string& command, json inputs, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o{new_report(command, std::move(inputs)), kPass};
  try {
    o.exit_code = body(o.report);
  } catch (const Error& e) {
    o.exit_code = exit_code_for(e.kind());
    o.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    o.exit_code = kDefect;
    o.report["error"] = {{"kind", "Defect"}, {"message", e.what()}};
  }
  finish(o, t0);
  return o;
}

/// Text view built only from the JSON document.
inline std::string render_text(const json& r) {
  std::ostringstream out;
  out << r.value("tool", "ewloci") << " " << r.value("version", "") << "  " << r.value("command", "") << "\n";
  if (r.contains("scope")) out << "scope: " << r["scope"].get<std::string>() << "\n";
  if (r.contains("summary")) {
    for (const auto& [k, v] : r["summary"].items()) out << "  " << k << ": " << v.dump() << "\n";
  }
  for (const auto& c : r["checks"]) {
    out << "  [" << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "] " << c["name"].get<std::string>();
    if (c["detail"].contains("witness")) out << "  witness " << c["detail"]["witness"].dump();
    out << "\n";
  }
  if (r.contains("error")) out << "  error: " << r["error"]["message"].get<std::string>() << "\n";
  out << "verdict: " << r.value("verdict", "") << " (exit " << r.value("exit_code", -1) << ")\n";
  return out.str();
}

// ---------------------------------------------------------------------------

inline json verdict_json(const EwVerdict& v) {
  json j{{"pass", v.pass}, {"rank", v.rank}, {"dim", v.dim}};
  if (!v.pass) j["failure"] = to_string(v.failure);
  if (v.failure == EwFailureKind::parity_mismatch) j["witness"] = {v.parity_index};
  if (v.failure == EwFailureKind::bad_subset) {
    j["witness"] = v.subset;
    j["subset_sum"] = v.subset_sum;
  }
  return j;
}

inline Outcome cmd_check_ew(const std::vector<int>& kappa, int k, const std::vector<int>& a) {
  return run_command("check-ew", {{"kappa", kappa}, {"k", k}, {"a", a}}, [&](json& r) -> int {
    auto sig = validate_signature(kappa);
    auto labelled = to_label_order(sig, a);
    auto datum = validate_cover_datum(sig, k, labelled);
    auto v = is_generalized_ew(sig, datum);
    r["summary"] = {{"labels_kappa", sig.orders}, {"labels_a", datum.a}, {"rank", v.rank}, {"dim", v.dim}};
    add_check(r, "square_of_abelian", is_square_of_abelian(sig, datum));
    add_check(r, "generalized_ew", v.pass, verdict_json(v));
    return v.pass ? kPass : kFail;
  });
}

inline Outcome cmd_enumerate(const std::vector<int>& kappa, int k_max) {
  return run_command("enumerate", {{"kappa", kappa}, {"k_max", k_max}}, [&](json& r) -> int {
    auto sig = validate_signature(kappa);
    auto classes = enumerate_cover_data(sig, k_max);
    json table = json::array();
    for (const auto& c : classes) {
      table.push_back({{"k", c.k}, {"a", c.representative}, {"members", c.members}, {"rank", c.verdict.rank}, {"dim", c.verdict.dim}});
    }
    r["classes"] = table;
    r["summary"] = {{"labels_kappa", sig.orders}, {"class_count", classes.size()}};
    return kPass;
  });
}

struct CoverSource {
  std::optional<std::string> descriptor_file;
  std::optional<std::string> surface_file;  // cover file written by build-cover
  std::string base;
  int k = 0;
  std::vector<int> a;
  int m = 0;
};

inline json source_json(const CoverSource& s) {
  if (s.surface_file) return {{"surface", *s.surface_file}};
  if (s.descriptor_file) return {{"descriptor", *s.descriptor_file}};
  return {{"base", s.base}, {"k", s.k}, {"a", s.a}, {"m", s.m}};
}

inline CoverSurface load_cover(const CoverSource& s, json& r) {
  if (s.surface_file) return cover_from_json(read_json_file(*s.surface_file));
  CoverDescriptor d;
  if (s.descriptor_file) {
    d = descriptor_from_json(read_json_file(*s.descriptor_file));
  } else {
    if (s.base.empty() || s.k == 0 || s.a.empty() || s.m == 0) {
      throw Error(ErrorKind::InvalidArgument, "give --descriptor, --surface, or --base/--k/--a/--m");
    }
    d = {s.base, s.k, s.a, s.m};
  }
  r["descriptor"] = {{"base", d.base}, {"k", d.k}, {"a", d.a}, {"m", d.m}};
  return build_from_descriptor(d);
}

inline json stratum_json(const CellComplexSurface& s) {
  auto t = singularities(s);
  return {{"stratum", t.stratum_name()}, {"genus", t.genus}, {"cells", s.cells()}, {"translation", t.translation},
          {"marked_points", t.marked_points()}};
}

inline json rh_json(const std::vector<RHEntry>& rh) {
  json out = json::array();
  for (std::size_t v = 0; v < rh.size(); ++v) {
    const auto& e = rh[v];
    if (!e.label) continue;
    out.push_back({{"label", e.label}, {"base_order", e.base_order}, {"ord", e.ord}, {"expected_points", e.expected_points},
                   {"expected_order", e.expected_order}, {"found_orders", e.found_orders}});
  }
  return out;
}

inline Outcome cmd_build_cover(const CoverSource& src, const std::optional<std::string>& out_file) {
  json inputs = source_json(src);
  if (out_file) inputs["out"] = *out_file;
  return run_command("build-cover", inputs, [&](json& r) -> int {
    r["scope"] = kScope;
    auto cv = load_cover(src, r);
    auto rh = riemann_hurwitz(cv);
    r["summary"] = stratum_json(cv.total);
    r["summary"]["base_stratum"] = singularities(cv.base.surface).stratum_name();
    add_check(r, "riemann_hurwitz", rh_matches(rh), {{"points", rh_json(rh)}});
    add_check(r, "connected", true);
    if (out_file) write_json_file(*out_file, cover_to_json(cv));
    return all_checks_pass(r) ? kPass : kFail;
  });
}

struct VerifyOptions {
  int sweep = 3;
  bool orbit = false;
  std::size_t orbit_max = 2000;
  int blocking = 0;
  std::uint64_t seed = kDefaultSeed;
};

inline json pairing_json(const PairingReport& p) {
  json cyl = json::array();
  for (auto [c, h] : p.shapes) cyl.push_back({{"c", c}, {"h", h}});
  json pairs = json::array();
  for (const auto& t : p.pairs) {
    pairs.push_back({{"i", t.i}, {"j", t.j}, {"isometric", t.isometric}, {"deck", t.deck}, {"homologous", to_string(t.homology)}});
  }
  std::string verdict = p.pass ? "pass" : p.perfect_matching ? "mismatch" : "unmatched";
  return {{"direction", {p.direction.first, p.direction.second}}, {"cylinders", cyl}, {"pairs", pairs}, {"verdict", verdict}};
}

inline Outcome cmd_verify(const CoverSource& src, const VerifyOptions& opt) {
  json inputs = source_json(src);
  inputs["sweep"] = opt.sweep;
  inputs["orbit"] = opt.orbit;
  inputs["blocking"] = opt.blocking;
  inputs["seed"] = opt.seed;
  return run_command("verify", inputs, [&](json& r) -> int {
    r["scope"] = kScope;
    if (opt.sweep < 1) throw Error(ErrorKind::InvalidArgument, "--sweep must be at least 1");
    auto cv = load_cover(src, r);
    auto v = is_generalized_ew(cv.base.signature, cv.datum);
    const bool full = cv.m == cv.datum.k;
    r["summary"] = stratum_json(cv.total);
    r["summary"]["generalized_ew"] = v.pass;
    r["summary"]["full_cover"] = full;
    auto rh = riemann_hurwitz(cv);
    add_check(r, "riemann_hurwitz", rh_matches(rh));

    auto copt = default_options(cv);
    copt.involution = copt.involution && v.pass;
    copt.hyperelliptic = copt.hyperelliptic && v.pass;
    json dirs = json::array();
    bool twins_ok = true, lifts_ok = true, doubled = true, inv_ok = true, shared_ok = true, tz_ok = true;
    std::optional<json> twin_witness, lift_witness;
    for (auto [p, q] : sweep_directions(opt.sweep)) {
      auto c = certify_direction(cv, p, q, copt);
      json rec = pairing_json(c.twins);
      rec["base_cylinders"] = c.base_cylinders;
      rec["lift_oracle"] = c.lifts_ok && c.area_ok;
      dirs.push_back(rec);
      if (!c.twins.pass && twins_ok) twin_witness = json{p, q};
      if (!(c.lifts_ok && c.area_ok) && lifts_ok) lift_witness = json{p, q};
      twins_ok = twins_ok && c.twins.pass;
      lifts_ok = lifts_ok && c.lifts_ok && c.area_ok;
      doubled = doubled && c.doubled;
      inv_ok = inv_ok && c.involution_ok.value_or(true);
      shared_ok = shared_ok && c.shared_boundary.value_or(true);
      tz_ok = tz_ok && c.true_zero.value_or(true);
    }
    r["directions"] = dirs;
    json ld;
    if (lift_witness) ld["witness"] = *lift_witness;
    add_check(r, "lift_oracle", lifts_ok, ld);
    if (full) {
      json td;
      if (twin_witness) td["witness"] = *twin_witness;
      add_check(r, "twin_sweep", twins_ok, td);
      if (v.pass) add_check(r, "two_lifts", doubled);
    }
    if (copt.involution) add_check(r, "involution", inv_ok);
    if (copt.hyperelliptic) {
      add_check(r, "hyperelliptic_boundary", shared_ok);
      add_check(r, "true_zero", tz_ok);
    }
    if (opt.blocking > 0) {
      auto samples = sample_blocking_inputs(cv.total, opt.blocking, opt.seed);
      json rows = json::array();
      bool all = true;
      for (const auto& s : samples) {
        auto tr = is_self_blocked(cv.total, cv.deck, s.point, s.dx, s.dy);
        all = all && tr.blocked;
        rows.push_back({{"cell", s.point.cell},
                        {"x", std::to_string(s.point.x.numerator()) + "/" + std::to_string(s.point.x.denominator())},
                        {"y", std::to_string(s.point.y.numerator()) + "/" + std::to_string(s.point.y.denominator())},
                        {"direction", {s.dx, s.dy}},
                        {"blockers_met", tr.fiber_hits.size()},
                        {"blocked", tr.blocked}});
      }
      add_check(r, "finite_blocking", all, {{"seed", opt.seed}, {"samples", rows}});
    }
    if (opt.orbit) {
      if (!cv.total.is_translation()) throw Error(ErrorKind::HalfTranslationUnsupported, "--orbit needs a translation cover");
      auto og = to_origami(cv.total);
      og.marked.clear();
      auto orbit = sl2z_orbit(og, opt.orbit_max);
      bool ok = !orbit.truncated;
      for (const auto& [h, vv] : orbit.members) {
        Origami o{h, vv, {}};
        auto s = o.to_surface();
        ok = ok && twin_report(s, horizontal_cylinders(s)).pass;
      }
      add_check(r, "orbit_twins", ok, {{"orbit_size", orbit.members.size()}, {"truncated", orbit.truncated}});
    }
    return all_checks_pass(r) ? kPass : kFail;
  });
}

inline json analysis_json(const SubgroupAnalysis& a) {
  json j{{"image_order", a.image_order},
         {"rho_K_order", a.rho_K_order},
         {"stab_order", a.stab_order},
         {"stab_contained_in_K", a.stab_contained_in_K},
         {"stab_normal_in_rhoK", a.stab_normal_in_rhoK}};
  if (a.quotient_order) j["quotient_order"] = *a.quotient_order;
  if (a.quotient_cyclic) j["quotient_cyclic"] = *a.quotient_cyclic;
  return j;
}

inline Outcome cmd_geminal_reps(int d, std::size_t budget) {
  return run_command("geminal-reps", {{"d", d}, {"budget", budget}}, [&](json& r) -> int {
    if (d < 1 || d > 3) throw Error(ErrorKind::InvalidArgument, "d must be 1, 2 or 3");
    SearchLimits lim;
    lim.max_candidates = budget;
    auto rep = search(d, lim);
    json table = json::array();
    bool answer = true;
    std::size_t geminal = 0;
    for (const auto& c : rep.classes) {
      json row{{"d", c.d}, {"sigma", format_cycles(c.sigma)}, {"tau", format_cycles(c.tau)},
               {"geminal", c.verdict.is_geminal}, {"orbit_size", c.verdict.orbit_size}};
      if (c.analysis) row["analysis"] = analysis_json(*c.analysis);
      if (c.verdict.is_geminal) {
        ++geminal;
        const auto& a = c.analysis;
        answer = answer && a && a->stab_contained_in_K && a->stab_normal_in_rhoK && a->quotient_cyclic.value_or(false);
      }
      table.push_back(row);
    }
    r["classes"] = table;
    r["summary"] = {{"candidates", rep.candidates}, {"transitive", rep.transitive}, {"classes", rep.classes.size()},
                    {"geminal_classes", geminal}, {"complete", rep.complete}};
    if (!rep.complete) r["partial"] = rep.note;
    add_check(r, "geminal_stab_normal_cyclic", answer);
    if (!rep.complete) return kBudget;
    return all_checks_pass(r) ? kPass : kFail;
  });
}

}  // namespace ewloci::cli
