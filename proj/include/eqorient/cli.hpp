#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bredon.hpp"
#include "burnside.hpp"
#include "group.hpp"
#include "homs.hpp"
#include "io.hpp"
#include "mackey.hpp"
#include "orientation.hpp"
#include "reps.hpp"

namespace eqorient::cli {

using io::Json;

/// Exit codes: 0 success, 1 internal invariant broken, 2 bad input.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kInput = 2;

struct Options {
  std::string group;
  std::string structure;
  std::string rep;
  std::string complex;
  std::string coefficients;
  std::string x;
  std::string y;
  long subgroup = -1;
  long n = 2;
  bool json = false;
};

namespace detail {

inline std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

inline void require(const std::string& value, const char* flag) {
  if (value.empty()) throw InvalidArgument(std::string(flag) + " is required");
}

inline GroupPtr main_group(const Options& o) {
  require(o.group, "--group");
  return io::load_group(o.group);
}

inline std::string perm_text(const Perm& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.degree(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline void emit(std::ostream& out, Json j) {
  Json doc{{"schema", 1}};
  for (auto& [k, v] : j.items()) doc[k] = std::move(v);
  out << doc.dump(2) << "\n";
}

inline SubRing chosen_subgroup(const RingPtr& ring, const Options& o) {
  if (o.subgroup < 0) throw InvalidArgument("--subgroup <class index> is required");
  if (static_cast<std::size_t>(o.subgroup) >= ring->rank())
    throw InvalidArgument("subgroup class " + std::to_string(o.subgroup) + " out of range (" +
                          std::to_string(ring->rank()) + " classes)");
  return class_sub_ring(ring, static_cast<std::size_t>(o.subgroup));
}

// ---------------------------------------------------------------------------
// group

inline void group_info(const Options& o, std::ostream& out) {
  auto g = main_group(o);
  auto t = subgroup_table(g);
  auto cls = element_classes(*g);
  Json gens = Json::array();
  for (auto i : g->generator_indices()) gens.push_back(io::perm_json(g->element(i)));
  if (o.json) {
    emit(out, {{"name", g->name()},
               {"order", g->order()},
               {"degree", g->degree()},
               {"abelian", g->is_abelian()},
               {"generators", gens},
               {"element_classes", cls.classes.size()},
               {"subgroup_classes", t.class_count()},
               {"subgroups", t.all_subgroups.size()}});
    return;
  }
  out << "group " << g->name() << ": order " << g->order() << ", degree " << g->degree()
      << (g->is_abelian() ? ", abelian" : ", nonabelian") << "\n";
  out << "generators:";
  for (auto i : g->generator_indices()) out << " " << perm_text(g->element(i));
  out << "\n";
  out << "element conjugacy classes: " << cls.classes.size() << "\n";
  out << "subgroups: " << t.all_subgroups.size() << " in " << t.class_count() << " classes\n";
}

inline void group_subgroups(const Options& o, std::ostream& out) {
  auto g = main_group(o);
  auto t = subgroup_table(g);
  if (o.json) {
    Json classes = Json::array();
    for (std::size_t c = 0; c < t.class_count(); ++c) {
      Json members = Json::array(), below = Json::array();
      for (auto x : t.rep(c).members()) members.push_back(x);
      for (std::size_t k = 0; k < t.class_count(); ++k)
        if (t.subconjugacy[k][c]) below.push_back(k);
      std::size_t size = 0;
      for (auto cl : t.class_of) size += cl == c;
      classes.push_back(Json{{"index", c},
                             {"order", t.rep(c).order()},
                             {"class_size", size},
                             {"normalizer_order", normalizer(t.rep(c)).order()},
                             {"members", members},
                             {"subconjugate", below}});
    }
    emit(out, {{"group", g->name()}, {"class_count", t.class_count()}, {"classes", classes}});
    return;
  }
  out << g->name() << ": " << t.class_count() << " classes of subgroups\n";
  for (std::size_t c = 0; c < t.class_count(); ++c) {
    std::size_t size = 0;
    for (auto cl : t.class_of) size += cl == c;
    out << "H" << c << ": order " << t.rep(c).order() << ", " << size << " conjugate"
        << (size == 1 ? "" : "s") << ", normalizer order " << normalizer(t.rep(c)).order() << ", elements {";
    bool first = true;
    for (auto x : t.rep(c).members()) {
      out << (first ? "" : ", ") << x;
      first = false;
    }
    out << "}\n";
  }
}

// ---------------------------------------------------------------------------
// burnside

inline void burnside_tom(const Options& o, std::ostream& out) {
  auto ring = BurnsideRing::create(main_group(o));
  const auto& m = ring->marks();
  if (o.json) {
    emit(out, {{"group", ring->group()->name()}, {"marks", io::to_json(m)}});
    return;
  }
  out << "table of marks of " << ring->group()->name() << " (row [G/Hi], column Hj)\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << "[G/H" << r << "]";
    for (std::size_t c = 0; c < m.cols(); ++c) out << " " << m(r, c);
    out << "\n";
  }
}

inline void print_element(const Options& o, std::ostream& out, const std::string& op, const BurnsideElement& x) {
  if (o.json) {
    emit(out, {{"operation", op}, {"group", x.ring()->group()->name()}, {"result", io::to_json(x)}});
    return;
  }
  out << to_string(x) << "\n";
}

inline void burnside_mul(const Options& o, std::ostream& out) {
  auto ring = BurnsideRing::create(main_group(o));
  require(o.x, "--x");
  require(o.y, "--y");
  print_element(o, out, "mul", io::parse_element(o.x, ring) * io::parse_element(o.y, ring));
}

inline void burnside_res(const Options& o, std::ostream& out) {
  auto ring = BurnsideRing::create(main_group(o));
  auto h = chosen_subgroup(ring, o);
  require(o.x, "--x");
  print_element(o, out, "res", restrict(io::parse_element(o.x, ring), h.ring, h.embedding));
}

inline void burnside_tr(const Options& o, std::ostream& out) {
  auto ring = BurnsideRing::create(main_group(o));
  auto h = chosen_subgroup(ring, o);
  require(o.x, "--x");
  print_element(o, out, "tr", transfer(io::parse_element(o.x, h.ring), ring, h.embedding));
}

inline void burnside_norm(const Options& o, std::ostream& out) {
  auto ring = BurnsideRing::create(main_group(o));
  auto h = chosen_subgroup(ring, o);
  require(o.x, "--x");
  print_element(o, out, "norm", norm(io::parse_element(o.x, h.ring), ring, h.embedding));
}

inline void burnside_units(const Options& o, std::ostream& out) {
  auto ring = BurnsideRing::create(main_group(o));
  auto u = units(ring);
  if (o.json) {
    Json basis = Json::array(), all = Json::array();
    for (const auto& b : u.basis) basis.push_back(io::to_json(b));
    for (const auto& x : u.all_units) all.push_back(io::to_json(x));
    emit(out, {{"group", ring->group()->name()},
               {"dimension", u.dimension()},
               {"order", u.order()},
               {"index_two_rank", u.index_two_rank()},
               {"basis", basis},
               {"units", all}});
    return;
  }
  out << "A^x(" << ring->group()->name() << ") = (Z/2)^" << u.dimension() << ", order " << u.order() << "\n";
  for (std::size_t i = 0; i < u.basis.size(); ++i) out << "basis " << i << ": " << to_string(u.basis[i]) << "\n";
}

// ---------------------------------------------------------------------------
// mackey

inline MackeyFunctor chosen_functor(const Options& o) {
  return io::load_coefficients(o.coefficients.empty() ? "burnside" : o.coefficients, main_group(o));
}

inline void mackey_show(const Options& o, std::ostream& out) {
  auto m = chosen_functor(o);
  if (o.json) {
    emit(out, {{"functor", io::to_json(m)}});
    return;
  }
  out << render_text(m);
}

inline void mackey_verify(const Options& o, std::ostream& out) {
  auto m = chosen_functor(o);
  auto report = verify_mackey_axiom(m);
  if (o.json) {
    emit(out, {{"functor", m.name}, {"group", m.group->name()}, {"ok", report.empty()}, {"violations", report}});
    return;
  }
  if (report.empty()) {
    out << m.name << " on " << m.group->name() << ": all Mackey axioms hold\n";
    return;
  }
  out << m.name << " on " << m.group->name() << ": " << report.size() << " violations\n";
  for (const auto& line : report) out << line << "\n";
}

inline void mackey_tn(const Options& o, std::ostream& out) {
  if (o.n < 1) throw InvalidArgument("--n must be at least 1");
  auto tn = tn_formulas(static_cast<std::size_t>(o.n));
  if (o.json) {
    Json entries = Json::array();
    for (const auto& e : tn.entries)
      entries.push_back(Json{{"h", e.h}, {"k", e.k}, {"res", io::to_json(e.res)}, {"tr", io::to_json(e.tr)}});
    emit(out, {{"n", tn.n}, {"top_dimension", tn.top_dimension()}, {"labels", tn.labels}, {"entries", entries}});
    return;
  }
  out << render_text(tn);
}

// ---------------------------------------------------------------------------
// rep

struct RepInput {
  ProductGroup pg;
  RationalMatrixRep v;
};

inline RepInput rep_input(const Options& o) {
  auto g = main_group(o);
  require(o.structure, "--structure");
  require(o.rep, "--rep");
  auto pg = product_group(io::load_group(o.structure), g);
  auto v = io::load_rep(o.rep, pg);
  return {pg, std::move(v)};
}

inline void rep_homog(const Options& o, std::ostream& out) {
  auto in = rep_input(o);
  auto r = homogeneity_check(in.v, in.pg);
  auto p = is_regular_multiple_pattern(in.v, in.pg);
  if (o.json) {
    Json levels = Json::array();
    for (const auto& l : r.levels)
      levels.push_back(Json{{"subgroup_class", l.subgroup_class},
                            {"fibers", l.fibers.size()},
                            {"coordinate", l.coordinate ? io::to_json(*l.coordinate) : Json(nullptr)}});
    emit(out, {{"dimension", in.v.dim},
               {"homogeneous", r.homogeneous},
               {"levels", levels},
               {"regular_multiple_pattern", p.matches},
               {"chi_w", p.chi_w ? io::to_json(*p.chi_w) : Json(nullptr)}});
    return;
  }
  out << "homogeneous: " << yes_no(r.homogeneous) << "\n";
  for (const auto& l : r.levels) {
    out << "H" << l.subgroup_class << ": " << l.fibers.size() << " component" << (l.fibers.size() == 1 ? "" : "s");
    if (l.coordinate)
      out << ", fiber character " << to_string(*l.coordinate);
    else
      out << ", fiber characters differ";
    out << "\n";
  }
  out << "regular-multiple pattern: " << yes_no(p.matches);
  if (p.chi_w) out << ", chi_W = " << to_string(*p.chi_w);
  out << "\n";
}

inline void rep_fiber(const Options& o, std::ostream& out) {
  auto in = rep_input(o);
  auto r = homogeneity_check(in.v, in.pg);
  if (o.json) {
    Json fibers = Json::array();
    for (const auto& l : r.levels)
      for (const auto& f : l.fibers)
        fibers.push_back(Json{{"subgroup_class", f.subgroup_class},
                              {"hom_class", f.hom_class},
                              {"theta", f.theta.image_of},
                              {"character", io::to_json(f.character)}});
    emit(out, {{"fibers", fibers}});
    return;
  }
  for (const auto& l : r.levels)
    for (const auto& f : l.fibers) {
      out << "H" << f.subgroup_class << " theta" << f.hom_class << " [";
      for (std::size_t i = 0; i < f.theta.image_of.size(); ++i) out << (i ? " " : "") << f.theta.image_of[i];
      out << "]: " << to_string(f.character) << "\n";
    }
}

// ---------------------------------------------------------------------------
// orient

inline void orient_gamma_rho(const Options& o, std::ostream& out) {
  auto v = gamma_rho_verdict(main_group(o));
  if (o.json) {
    emit(out, {{"bundle", v.bundle},
               {"hz_orientable", v.hz_orientable},
               {"ha_orientable", v.ha_orientable},
               {"w1_Z", io::to_json(v.w1_Z)},
               {"w1_A", io::to_json(v.w1_A)},
               {"ghost_note", v.ghost_note}});
    return;
  }
  out << "HZ-orientable: " << yes_no(v.hz_orientable) << ", HA-orientable: " << yes_no(v.ha_orientable) << "\n";
  out << "w1_Z = " << v.w1_Z << "\n";
  out << "w1_A = N_e^G(-1) = " << to_string(v.w1_A) << "\n";
  out << "note: " << v.ghost_note << "\n";
}

inline void orient_pi0(const Options& o, std::ostream& out) {
  auto g = main_group(o);
  require(o.structure, "--structure");
  auto d = classifying_pi0(g, io::load_group(o.structure));
  const auto& t = *d.table;
  if (o.json) {
    Json levels = Json::array();
    for (std::size_t c = 0; c < t.class_count(); ++c) {
      Json comps = Json::array();
      for (const auto& comp : d.class_level(c).components)
        comps.push_back(Json{{"label", comp.label},
                             {"theta", comp.theta.image_of},
                             {"class_size", comp.class_size},
                             {"centralizer_order", comp.centralizer_order}});
      levels.push_back(Json{{"subgroup_class", c}, {"order", t.rep(c).order()}, {"components", comps}});
    }
    emit(out, {{"group", g->name()}, {"structure", d.pi->name()}, {"levels", levels}});
    return;
  }
  out << "components of (B_G Pi)^H for G = " << g->name() << ", Pi = " << d.pi->name() << "\n";
  for (std::size_t c = 0; c < t.class_count(); ++c) {
    const auto& l = d.class_level(c);
    out << "H" << c << " (order " << t.rep(c).order() << "): " << l.components.size() << " component"
        << (l.components.size() == 1 ? "" : "s") << "\n";
    for (const auto& comp : l.components) {
      out << "  " << comp.label << ": images [";
      for (std::size_t i = 0; i < comp.theta.image_of.size(); ++i) out << (i ? " " : "") << comp.theta.image_of[i];
      out << "], class size " << comp.class_size << ", |Z(theta)| = " << comp.centralizer_order << "\n";
    }
  }
}

inline void orient_induced_line(const Options& o, std::ostream& out) {
  auto g = main_group(o);
  const std::string c = o.coefficients.empty() ? "A" : o.coefficients;
  if (c != "A" && c != "Z") throw InvalidArgument("--coefficients must be Z or A for induced-line");
  auto w = w1_induced_line(g, c == "A" ? Coefficient::A : Coefficient::Z);
  if (o.json) {
    Json j{{"coefficients", c}, {"orientable", w.orientable}};
    if (w.w1_A)
      j["w1"] = io::to_json(*w.w1_A);
    else
      j["w1"] = io::to_json(w.w1_Z);
    emit(out, j);
    return;
  }
  out << "w1 = " << (w.w1_A ? to_string(*w.w1_A) : w.w1_Z.str()) << "\n";
  out << "orientable: " << yes_no(w.orientable) << "\n";
}

inline void orient_odd_collapse(const Options& o, std::ostream& out) {
  auto g = main_group(o);
  const bool ok = odd_order_collapse(g);
  if (o.json) {
    emit(out, {{"group", g->name()}, {"collapse", ok}});
    return;
  }
  out << "augmentation A_H^x -> F2 is an isomorphism at every level: " << yes_no(ok) << "\n";
}

// ---------------------------------------------------------------------------
// bredon

inline void bredon_compute(const Options& o, std::ostream& out) {
  auto g = main_group(o);
  require(o.complex, "--complex");
  auto x = io::load_complex(o.complex, g);
  auto m = io::load_coefficients(o.coefficients.empty() ? "constZ" : o.coefficients, g);
  auto h = bredon_cohomology(x, m);
  if (o.json) {
    Json groups = Json::array();
    for (const auto& a : h.groups) groups.push_back(io::to_json(a));
    emit(out, {{"complex", x.name}, {"coefficients", m.name}, {"cochain_ranks", h.cochain_ranks}, {"cohomology", groups}});
    return;
  }
  out << "H^*(" << x.name << "; " << m.name << ") over " << g->name() << "\n";
  for (std::size_t n = 0; n < h.groups.size(); ++n) out << "H^" << n << " = " << to_string(h.groups[n]) << "\n";
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Burnside rings, Mackey functors and equivariant orientation obstructions", "eqorient"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--group", o.group, "group name (C2, C4, C2xC2, S3, D4, Q8, S4, ...) or JSON path");
  app.add_option("--structure", o.structure, "structure group Pi: name or JSON path");
  app.add_option("--rep", o.rep, "representation of Pi x G: expression or JSON path");
  app.add_option("--complex", o.complex, "G-CW complex: built-in name or JSON path");
  app.add_option("--coefficients", o.coefficients, "burnside|constZ|constF2|units|ghost (Z|A for induced-line)");
  app.add_option("--x", o.x, "Burnside element as coefficients in class order, e.g. 1,0,-1");
  app.add_option("--y", o.y, "second Burnside element");
  app.add_option("--subgroup", o.subgroup, "subgroup class index");
  app.add_option("--n", o.n, "rank n of C2^n for mackey tn");
  app.add_flag("--json", o.json, "structured JSON output");

  std::function<void()> action;
  auto family = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->require_subcommand(1);
    return s;
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, void (*f)(const Options&, std::ostream&)) {
    parent->add_subcommand(name, help)->fallthrough()->callback([&action, &o, &out, f] {
      action = [&o, &out, f] { f(o, out); };
    });
  };
  auto* group = family("group", "finite permutation groups");
  leaf(group, "info", "order, generators, class counts", detail::group_info);
  leaf(group, "subgroups", "subgroup conjugacy classes", detail::group_subgroups);
  auto* burnside = family("burnside", "Burnside ring arithmetic");
  leaf(burnside, "tom", "table of marks", detail::burnside_tom);
  leaf(burnside, "mul", "product x*y", detail::burnside_mul);
  leaf(burnside, "res", "restriction of x to a subgroup", detail::burnside_res);
  leaf(burnside, "tr", "transfer of x from a subgroup", detail::burnside_tr);
  leaf(burnside, "norm", "multiplicative norm of x from a subgroup", detail::burnside_norm);
  leaf(burnside, "units", "unit group", detail::burnside_units);
  auto* mackey = family("mackey", "Mackey functors");
  leaf(mackey, "show", "levels and structure maps", detail::mackey_show);
  leaf(mackey, "verify", "check the Mackey axioms", detail::mackey_verify);
  leaf(mackey, "tn", "unit functor tables for C2^n", detail::mackey_tn);
  auto* rep = family("rep", "representations of Pi x G");
  leaf(rep, "homog", "homogeneity check", detail::rep_homog);
  leaf(rep, "fiber", "fiber characters", detail::rep_fiber);
  auto* orient = family("orient", "orientation obstructions");
  leaf(orient, "gamma-rho", "verdicts for the bundle of the regular representation", detail::orient_gamma_rho);
  leaf(orient, "pi0", "components of (B_G Pi)^H", detail::orient_pi0);
  leaf(orient, "induced-line", "w1 of the induced Moebius line", detail::orient_induced_line);
  leaf(orient, "odd-collapse", "odd-order unit collapse", detail::orient_odd_collapse);
  auto* bredon = family("bredon", "Bredon cohomology");
  leaf(bredon, "compute", "cohomology of a complex", detail::bredon_compute);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return kInput;
  }
  if (!action) {
    err << "error: no command given\n";
    return kInput;
  }
  try {
    action();
  } catch (const Error& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return e.kind() == ErrorKind::InvalidInput ? kInput : kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << detail::one_line(e.what()) << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace eqorient::cli
