// Command-line front end: fixture I/O, pipelines over the combinatorial
// modules, and verify subcommands reproducing the structural theorems on
// desk-scale instances.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <random>

#include "cfloer/fixtures.hpp"
#include "cfloer/floer.hpp"
#include "cfloer/heegaard.hpp"
#include "cfloer/report.hpp"

using namespace cfloer;

namespace {

struct Options {
  std::string fixture;
  bool json = false;
  int budget = 8;
  unsigned seed = 1;
};

int finish(const Report& rep, const Options& opt,
           std::chrono::steady_clock::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (opt.json) {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    std::cout << rep.text();
  }
  std::cerr << "elapsed: " << ms << " ms\n";
  return rep.all_passed() ? 0 : 2;
}

Slope parse_slope(const std::string& s) {
  if (s == "inf" || s == "infty") return slope_infinity();
  auto slash = s.find('/');
  if (slash == std::string::npos) return make_slope(std::stoll(s), 1);
  return make_slope(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

Json bigrading_json(const Bigrading& b) {
  return Json{{"maslov", b.maslov}, {"alexander", b.alexander}};
}

GridDiagram grid_from_fixture(const Fixture& f) {
  require(f.kind == "grid", "BadFixture", "expected a grid fixture");
  return grid_from_json(f.payload);
}

OpenBook openbook_from_fixture(const Fixture& f) {
  require(f.kind == "openbook", "BadFixture", "expected an openbook fixture");
  return openbook_from_json(f.payload);
}

PartialOpenBook pob_from_fixture(const Fixture& f) {
  if (f.kind == "pob") return pob_from_json(f.payload);
  if (f.kind == "openbook") return knot_complement(openbook_from_json(f.payload));
  fail("BadFixture", "expected a pob or openbook fixture");
}

void run_expectations(Report& rep, const Fixture& f,
                      const std::map<std::string, Json>& got) {
  for (const auto& e : f.expectations) {
    auto it = got.find(e.check);
    if (it == got.end()) {
      rep.skip("expectation:" + e.check, "no such check in this command");
      continue;
    }
    rep.check("expectation:" + e.check, it->second == e.want, it->second, e.want,
              e.provenance);
  }
}

// ---------------------------------------------------------------------------

int cmd_grid_compute(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  GridDiagram g = grid_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  GridHomology h = grid_homology(g, opt.budget);
  Json ranks = Json::array();
  for (auto& [bg, r] : h.hat_ranks) {
    Json e = bigrading_json(bg);
    e["rank"] = r;
    ranks.push_back(e);
  }
  rep.pass("tilde-rank", h.tilde_total);
  rep.pass("stabilization-factor", h.stabilization_factor);
  rep.pass("hat-rank", h.hat_total);
  rep.pass("hat-ranks", ranks);
  std::map<std::string, Json> got{{"hat-rank", h.hat_total},
                                  {"tilde-rank", h.tilde_total}};
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

int cmd_grid_invariant(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  GridDiagram g = grid_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  std::map<std::string, Json> got;
  for (int sign : {+1, -1}) {
    ClassStatus cs = class_status(g, sign, opt.budget);
    std::string name = sign > 0 ? "class-plus" : "class-minus";
    Json val{{"zero", cs.zero},
             {"maslov", cs.grading.maslov},
             {"alexander", cs.grading.alexander}};
    rep.pass(name, val);
    got[name] = val;
    got[name + ":zero"] = cs.zero;
  }
  LegendrianData ld = legendrian_data(g);
  rep.pass("tb", ld.tb);
  rep.pass("rot", ld.rot);
  got["tb"] = ld.tb;
  got["rot"] = ld.rot;
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

int cmd_grid_stabilize(const Options& opt, const std::string& type, int column,
                       const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  GridDiagram g = grid_from_fixture(f);
  StabCorner corner;
  if (type == "legendrian-positive") {
    corner = legendrian_positive_corner();
  } else if (type == "legendrian-negative") {
    corner = legendrian_negative_corner();
  } else {
    corner = stab_corner_from_string(type);
  }
  GridDiagram s = grid_stabilize(g, corner, column);
  Report rep;
  rep.set_input(to_json(f));
  rep.pass("stabilized", to_json(s));
  LegendrianData before = legendrian_data(g), after = legendrian_data(s);
  rep.pass("tb", Json{{"before", before.tb}, {"after", after.tb}});
  rep.pass("rot", Json{{"before", before.rot}, {"after", after.rot}});
  if (!out_path.empty()) {
    Fixture nf;
    nf.kind = "grid";
    nf.payload = to_json(s);
    save_fixture(nf, out_path);
  }
  return finish(rep, opt, t0);
}

int cmd_grid_moves(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  GridDiagram g = grid_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  GridHomology base = grid_homology(g, opt.budget);
  GridHomology tr = grid_homology(translate(g, 1, 1), opt.budget);
  rep.check("translation-invariance", tr.hat_ranks == base.hat_ranks,
            tr.hat_total, base.hat_total);
  int commuted = 0;
  for (int i = 0; i + 1 < g.n; ++i) {
    if (!columns_commute(g, i)) continue;
    GridHomology c = grid_homology(commute_columns(g, i), opt.budget);
    rep.check("commutation-invariance:" + std::to_string(i),
              c.hat_ranks == base.hat_ranks, c.hat_total, base.hat_total);
    ++commuted;
  }
  if (commuted == 0) rep.skip("commutation-invariance", "no commuting column pair");
  for (StabCorner c :
       {StabCorner::NW, StabCorner::NE, StabCorner::SW, StabCorner::SE}) {
    GridHomology s = grid_homology(grid_stabilize(g, c, 0), opt.budget);
    rep.check("stabilization-invariance:" + to_string(c),
              s.hat_ranks == base.hat_ranks, s.hat_total, base.hat_total);
  }
  return finish(rep, opt, t0);
}

// ---------------------------------------------------------------------------

Json sutures_json(const SuturedData& sd) {
  return Json{{"sutures", sd.suture_count},
              {"chi_plus", sd.chi_plus},
              {"chi_minus", sd.chi_minus}};
}

int cmd_pob_from_openbook(const Options& opt, const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  OpenBook ob = openbook_from_fixture(f);
  PartialOpenBook pob = knot_complement(ob);
  Report rep;
  rep.set_input(to_json(f));
  SuturedData sd = sutures(pob);
  rep.pass("sutures", sd.suture_count);
  rep.pass("balanced", sd.chi_plus == sd.chi_minus);
  rep.pass("p-bands", static_cast<int>(pob.p_bands.size()));
  if (!out_path.empty()) {
    Fixture nf;
    nf.kind = "pob";
    nf.payload = to_json(pob);
    save_fixture(nf, out_path);
  }
  std::map<std::string, Json> got{{"sutures", sd.suture_count},
                                  {"p-bands", static_cast<int>(pob.p_bands.size())}};
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

int cmd_pob_sutures(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  PartialOpenBook pob = pob_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  SuturedData sd = sutures(pob);
  rep.pass("sutured-data", sutures_json(sd));
  rep.check("balanced", sd.chi_plus == sd.chi_minus, sd.chi_plus, sd.chi_minus);
  std::map<std::string, Json> got{{"sutures", sd.suture_count},
                                  {"balanced", sd.chi_plus == sd.chi_minus}};
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

int cmd_pob_bypass(const Options& opt, const std::string& meridian,
                   const std::string& stab, const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  PartialOpenBook pob = pob_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  BypassArc arc;
  if (!meridian.empty()) {
    arc = meridian_bypass_arc(pob,
                              meridian == "-" ? SliceSign::Minus : SliceSign::Plus);
  } else if (!stab.empty()) {
    arc = stabilization_bypass_arc(pob,
                                   stab == "-" ? SliceSign::Minus : SliceSign::Plus);
  } else {
    fail("InvalidArc", "choose --meridian +|- or --stabilization +|-");
  }
  BypassResult br = bypass_attach(pob, arc);
  SuturedData sd = sutures(br.pob);
  rep.pass("sutured-data", sutures_json(sd));
  rep.pass("new-suture-slope", br.new_suture_slope.str());
  rep.pass("arc-slope", arc.arc_slope.str());
  rep.pass("slice",
           Json{{"s0", arc.slice.s0.str()},
                {"s1", arc.slice.s1.str()},
                {"sign", to_string(arc.slice.sign)}});
  rep.check("balanced", sd.chi_plus == sd.chi_minus, sd.chi_plus, sd.chi_minus);
  if (!out_path.empty()) {
    Fixture nf;
    nf.kind = "pob";
    nf.payload = to_json(br.pob);
    save_fixture(nf, out_path);
  }
  std::map<std::string, Json> got{{"sutures", sd.suture_count},
                                  {"new-suture-slope", br.new_suture_slope.str()}};
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

Json diagram_stats(const HeegaardDiagram& d, long long budget) {
  Json out{{"pairs", d.n_pairs},
           {"crossings", d.map.crossings()},
           {"nice", is_nice(d)},
           {"closed", d.closed}};
  if (is_nice(d)) {
    DiagramComplex dc = differential(d, budget);
    out["generators"] = static_cast<int>(dc.generators.size());
    HomologyReport rep =
        homology(dc.complex, d.marked_tuple.empty()
                                 ? std::optional<F2Vec>{}
                                 : std::optional<F2Vec>{F2Vec{
                                       dc.index_of(d.marked_tuple)}});
    out["homology-rank"] = rep.total_rank;
    if (rep.queried) {
      out["class-cycle"] = rep.is_cycle;
      out["class-zero"] = rep.is_boundary;
    }
  } else {
    out["generators"] = static_cast<int>(enumerate_generators(d).size());
  }
  return out;
}

int cmd_pob_diagram(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  PartialOpenBook pob = pob_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  HeegaardDiagram d = diagram_from_pob(pob);
  Json stats = diagram_stats(d, 2000000);
  rep.pass("diagram", stats);
  std::map<std::string, Json> got{{"diagram", stats},
                                  {"nice", stats["nice"]},
                                  {"class-cycle", stats.value("class-cycle", Json())}};
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

int cmd_diagram_from_openbook(const Options& opt, int orientation) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  OpenBook ob = openbook_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));
  HeegaardDiagram d = knot_diagram(ob, orientation);
  Json stats = diagram_stats(d, 2000000);
  rep.pass("diagram", stats);
  std::map<std::string, Json> got{{"diagram", stats}};
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

// ---------------------------------------------------------------------------

int cmd_slopes_step(const Options& opt, const std::string& cur, const std::string& arc) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.set_input(Json{{"current", cur}, {"arc", arc}});
  Slope s = bypass_slope_step(parse_slope(cur), parse_slope(arc));
  rep.pass("new-slope", s.str());
  return finish(rep, opt, t0);
}

int cmd_slopes_glue(const Options& opt, const std::string& s0, const std::string& s1,
                    const std::string& s2, const std::string& sign1,
                    const std::string& sign2) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.set_input(Json{{"s0", s0}, {"s1", s1}, {"s2", s2}, {"sign1", sign1},
                     {"sign2", sign2}});
  BasicSlice b1 = make_basic_slice(parse_slope(s0), parse_slope(s1),
                                   sign1 == "-" ? SliceSign::Minus : SliceSign::Plus);
  BasicSlice b2 = make_basic_slice(parse_slope(s1), parse_slope(s2),
                                   sign2 == "-" ? SliceSign::Minus : SliceSign::Plus);
  GlueResult r = glue(b1, b2);
  rep.pass("classification", to_string(r.kind));
  if (r.slice) {
    rep.pass("slice", Json{{"s0", r.slice->s0.str()},
                           {"s1", r.slice->s1.str()},
                           {"sign", to_string(r.slice->sign)}});
  }
  return finish(rep, opt, t0);
}

int cmd_slopes_range(const Options& opt, const std::string& lo, const std::string& hi,
                     const std::string& s) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.set_input(Json{{"lo", lo}, {"hi", hi}, {"s", s}});
  rep.pass("in-range",
           in_range(parse_slope(s), SlopeRange{parse_slope(lo), parse_slope(hi)}));
  return finish(rep, opt, t0);
}

// ---------------------------------------------------------------------------

int cmd_verify_thm_main(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  OpenBook ob = openbook_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));

  PartialOpenBook pob = knot_complement(ob);
  SuturedData sd = sutures(pob);
  rep.check("complement-sutures", sd.suture_count == 2, sd.suture_count, 2,
            "stated");

  BypassArc arc = meridian_bypass_arc(pob, SliceSign::Plus);
  BypassResult br = bypass_attach(pob, arc);
  rep.check("meridian-slope", br.new_suture_slope == make_slope(0, 1),
            br.new_suture_slope.str(), "0", "stated");

  HeegaardDiagram sut = diagram_from_pob(br.pob);
  HeegaardDiagram punct = puncture(knot_diagram(ob, +1));
  DiagramIso iso = diagram_equiv(sut, punct);
  rep.check("diagram-equivalent", iso.equivalent, iso.equivalent, true, "stated");

  // Coordinates that survive the bigon reduction must correspond under the
  // witness; coordinates cancelled on one side must be cancelled on the
  // other.
  bool tuple_ok = iso.equivalent;
  if (iso.equivalent && !iso.crossing_map.empty()) {
    int gone_a = 0, gone_b = 0;
    for (int c : iso.canon_a.marked_tuple) gone_a += c < 0;
    for (int c : iso.canon_b.marked_tuple) gone_b += c < 0;
    tuple_ok &= gone_a == gone_b;
    for (size_t i = 0; i < iso.canon_a.marked_tuple.size(); ++i) {
      int eh = iso.canon_a.marked_tuple[i];
      if (eh < 0) continue;
      int pa = iso.alpha_perm[i];
      tuple_ok &= pa >= 0 && iso.canon_b.marked_tuple[pa] >= 0 &&
                  iso.crossing_map[eh] == iso.canon_b.marked_tuple[pa];
    }
  }
  rep.check("generator-correspondence", tuple_ok, tuple_ok, true, "stated");

  if (is_nice(sut)) {
    DiagramComplex dc = differential(sut);
    HomologyReport h = homology(dc.complex, F2Vec{dc.index_of(sut.marked_tuple)});
    rep.check("contact-class-cycle", h.is_cycle, h.is_cycle, true, "stated");
  }
  return finish(rep, opt, t0);
}

int cmd_verify_stabilization(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  GridDiagram g = grid_from_fixture(f);
  Report rep;
  rep.set_input(to_json(f));

  ClassStatus base_p = class_status(g, +1, opt.budget);
  ClassStatus base_m = class_status(g, -1, opt.budget);
  rep.pass("class-plus-before", Json{{"zero", base_p.zero}});
  rep.pass("class-minus-before", Json{{"zero", base_m.zero}});

  GridDiagram pos = grid_stabilize(g, legendrian_positive_corner(), 0);
  GridDiagram neg = grid_stabilize(g, legendrian_negative_corner(), 0);

  ClassStatus pp = class_status(pos, +1, opt.budget);
  rep.check("positive-stabilization-kills", pp.zero, pp.zero, true, "stated");
  ClassStatus np = class_status(neg, +1, opt.budget);
  rep.check("negative-stabilization-preserves", np.zero == base_p.zero, np.zero,
            base_p.zero, "stated");
  if (!base_p.zero) {
    rep.check("alexander-grading-unchanged",
              np.grading.alexander == base_p.grading.alexander,
              np.grading.alexander, base_p.grading.alexander, "derived");
  }
  // The reversed orientation swaps the roles.
  ClassStatus pm = class_status(pos, -1, opt.budget);
  rep.check("positive-preserves-reversed", pm.zero == base_m.zero, pm.zero,
            base_m.zero, "stated");
  ClassStatus nm = class_status(neg, -1, opt.budget);
  rep.check("negative-kills-reversed", nm.zero, nm.zero, true, "stated");

  std::map<std::string, Json> got{
      {"class-plus-before:zero", base_p.zero},
      {"class-minus-before:zero", base_m.zero},
  };
  run_expectations(rep, f, got);
  return finish(rep, opt, t0);
}

int cmd_verify_gluing(const Options& opt, int pmax) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.set_input(Json{{"pmax", pmax}});
  std::vector<Slope> slopes;
  for (int p = -pmax; p <= pmax; ++p) {
    for (int q = 0; q <= pmax; ++q) {
      if (p == 0 && q == 0) continue;
      Slope s = make_slope(p, q);
      if (s.p == p && s.q == q) slopes.push_back(s);
    }
  }
  long long same_ok = 0, opp_ok = 0, bad = 0;
  for (const Slope& mid : slopes) {
    for (const Slope& bot : slopes) {
      if (!is_integral_basis(bot, mid)) continue;
      for (const Slope& top : slopes) {
        if (!is_integral_basis(mid, top)) continue;
        GlueResult same = glue(make_basic_slice(bot, mid, SliceSign::Plus),
                               make_basic_slice(mid, top, SliceSign::Plus));
        GlueResult diff = glue(make_basic_slice(bot, mid, SliceSign::Plus),
                               make_basic_slice(mid, top, SliceSign::Minus));
        if (same.kind == GlueKind::Overtwisted) ++bad;
        if (same.kind == GlueKind::BasicSlice) {
          ++same_ok;
          if (diff.kind == GlueKind::Overtwisted) {
            ++opp_ok;
          } else {
            ++bad;
          }
        }
      }
    }
  }
  rep.check("same-sign-never-overtwisted", bad == 0, bad, 0, "stated");
  rep.pass("glued-pairs", same_ok);
  rep.check("opposite-sign-overtwisted", opp_ok == same_ok, opp_ok, same_ok,
            "stated");
  GlueResult inst = glue(make_basic_slice(slope_infinity(), make_slope(1, 1),
                                          SliceSign::Plus),
                         make_basic_slice(make_slope(1, 1), make_slope(0, 1),
                                          SliceSign::Plus));
  rep.check("stabilization-instance",
            inst.kind == GlueKind::BasicSlice && inst.slice->s0 == slope_infinity() &&
                inst.slice->s1 == make_slope(0, 1),
            to_string(inst.kind), "basic-slice", "stated");
  return finish(rep, opt, t0);
}

int cmd_verify_soundness(const Options& opt, int count) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.set_input(Json{{"count", count}, {"seed", opt.seed}, {"budget", opt.budget}});
  std::mt19937 rng(opt.seed);
  int checked = 0;
  bool ok = true;
  for (int trial = 0; trial < count; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<int> x(n), o(n);
    std::iota(x.begin(), x.end(), 0);
    std::iota(o.begin(), o.end(), 0);
    bool coll = true;
    while (coll) {
      std::shuffle(x.begin(), x.end(), rng);
      std::shuffle(o.begin(), o.end(), rng);
      coll = false;
      for (int i = 0; i < n; ++i) coll |= x[i] == o[i];
    }
    GridComplex gc = build_grid_complex(GridDiagram{n, x, o}, opt.budget);
    ok &= gc.complex.boundary_squares_to_zero();
    ++checked;
  }
  rep.check("boundary-squares-to-zero", ok, checked, count, "stated");
  return finish(rep, opt, t0);
}

int cmd_verify_torsion(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Fixture f = load_fixture(opt.fixture);
  Report rep;
  rep.set_input(to_json(f));
  if (!f.torsion_layer) {
    rep.skip("torsion-logic", "fixture is not flagged as containing a torsion layer");
    return finish(rep, opt, t0);
  }
  rep.add(Check{"premise-torsion-class-vanishes", "pass",
                Json("contact class of the torsion layer is zero"), Json(),
                "imported analytic input; not computed here"});
  rep.pass("gluing-map-propagates-zero",
           Json("the gluing map carries the vanishing class to the complement's "
                "contact class"),
           Json(), "stated");
  rep.pass("contact-class-vanishes", Json("EH = 0"), Json(), "derived");
  rep.pass("legendrian-class-vanishes",
           Json("the basic-slice map carries EH to the Legendrian class, so it "
                "vanishes as well"),
           Json(), "derived");
  return finish(rep, opt, t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cfloer: combinatorial contact topology and Floer homology"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "emit the canonical JSON report");
  app.add_option("--budget", opt.budget, "grid size budget")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized corpora")
      ->capture_default_str();

  auto add_fixture = [&](CLI::App* cmd) {
    cmd->add_option("--fixture", opt.fixture, "fixture file")->required();
  };

  // grid
  auto* grid = app.add_subcommand("grid", "grid diagram computations");
  grid->require_subcommand(1);
  auto* gc = grid->add_subcommand("compute", "bigraded homology of a grid");
  add_fixture(gc);
  auto* gi = grid->add_subcommand("invariant", "invariant classes of a grid");
  add_fixture(gi);
  auto* gs = grid->add_subcommand("stabilize", "stabilize a grid");
  add_fixture(gs);
  std::string stab_type = "legendrian-positive";
  int stab_column = 0;
  std::string out_path;
  gs->add_option("--type", stab_type,
                 "nw|ne|sw|se|legendrian-positive|legendrian-negative");
  gs->add_option("--column", stab_column, "column of the marking");
  gs->add_option("--out", out_path, "write the stabilized fixture here");
  auto* gm = grid->add_subcommand("moves", "rank invariance under moves");
  add_fixture(gm);

  // pob
  auto* pob = app.add_subcommand("pob", "partial open book operations");
  pob->require_subcommand(1);
  auto* pf = pob->add_subcommand("from-openbook", "knot complement of a marked book");
  add_fixture(pf);
  std::string pob_out;
  pf->add_option("--out", pob_out, "write the resulting pob fixture here");
  auto* ps = pob->add_subcommand("sutures", "sutured boundary data");
  add_fixture(ps);
  auto* pb = pob->add_subcommand("bypass", "attach a bypass");
  add_fixture(pb);
  std::string meridian, stab_sign;
  pb->add_option("--meridian", meridian, "+ or -: meridian attachment choice");
  pb->add_option("--stabilization", stab_sign, "+ or -: stabilization arc");
  pb->add_option("--out", pob_out, "write the resulting pob fixture here");
  auto* pd = pob->add_subcommand("diagram", "sutured Heegaard diagram data");
  add_fixture(pd);

  // diagram
  auto* dia = app.add_subcommand("diagram", "Heegaard diagram construction");
  dia->require_subcommand(1);
  auto* dob = dia->add_subcommand("from-openbook", "doubly pointed knot diagram");
  add_fixture(dob);
  int orientation = 1;
  dob->add_option("--orientation", orientation, "+1 or -1");
  auto* dpo = dia->add_subcommand("from-pob", "sutured diagram of a pob");
  add_fixture(dpo);

  // slopes
  auto* slo = app.add_subcommand("slopes", "torus slope calculus");
  slo->require_subcommand(1);
  auto* sst = slo->add_subcommand("step", "dividing slope after one bypass");
  std::string cur_s, arc_s;
  sst->add_option("--current", cur_s)->required();
  sst->add_option("--arc", arc_s)->required();
  auto* sgl = slo->add_subcommand("glue", "classify a stacked pair of slices");
  std::string s0, s1, s2, sign1 = "+", sign2 = "+";
  sgl->add_option("--s0", s0)->required();
  sgl->add_option("--s1", s1)->required();
  sgl->add_option("--s2", s2)->required();
  sgl->add_option("--sign1", sign1);
  sgl->add_option("--sign2", sign2);
  auto* srg = slo->add_subcommand("range", "circular range membership");
  std::string lo_s, hi_s, q_s;
  srg->add_option("--lo", lo_s)->required();
  srg->add_option("--hi", hi_s)->required();
  srg->add_option("--slope", q_s)->required();

  // verify
  auto* ver = app.add_subcommand("verify", "machine-checked theorem instances");
  ver->require_subcommand(1);
  auto* vm = ver->add_subcommand("thm-main", "complement, bypass and diagram match");
  add_fixture(vm);
  auto* vs = ver->add_subcommand("stabilization", "invariant class under stabilization");
  add_fixture(vs);
  auto* vg = ver->add_subcommand("gluing", "basic slice gluing classification");
  int pmax = 10;
  vg->add_option("--pmax", pmax, "bound on slope entries")->capture_default_str();
  auto* vt = ver->add_subcommand("torsion-logic", "vanishing propagation report");
  add_fixture(vt);
  auto* vso = ver->add_subcommand("soundness", "d^2 = 0 on randomized grids");
  int soundness_count = 100;
  vso->add_option("--count", soundness_count, "number of random grids")
      ->capture_default_str();

  // Global flags may appear after subcommand names.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands({})) enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gc->parsed()) return cmd_grid_compute(opt);
    if (gi->parsed()) return cmd_grid_invariant(opt);
    if (gs->parsed()) return cmd_grid_stabilize(opt, stab_type, stab_column, out_path);
    if (gm->parsed()) return cmd_grid_moves(opt);
    if (pf->parsed()) return cmd_pob_from_openbook(opt, pob_out);
    if (ps->parsed()) return cmd_pob_sutures(opt);
    if (pb->parsed()) return cmd_pob_bypass(opt, meridian, stab_sign, pob_out);
    if (pd->parsed()) return cmd_pob_diagram(opt);
    if (dob->parsed()) return cmd_diagram_from_openbook(opt, orientation);
    if (dpo->parsed()) return cmd_pob_diagram(opt);
    if (sst->parsed()) return cmd_slopes_step(opt, cur_s, arc_s);
    if (sgl->parsed()) return cmd_slopes_glue(opt, s0, s1, s2, sign1, sign2);
    if (srg->parsed()) return cmd_slopes_range(opt, lo_s, hi_s, q_s);
    if (vm->parsed()) return cmd_verify_thm_main(opt);
    if (vs->parsed()) return cmd_verify_stabilization(opt);
    if (vg->parsed()) return cmd_verify_gluing(opt, pmax);
    if (vt->parsed()) return cmd_verify_torsion(opt);
    if (vso->parsed()) return cmd_verify_soundness(opt, soundness_count);
  } catch (const Error& e) {
    Json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 1;
}
