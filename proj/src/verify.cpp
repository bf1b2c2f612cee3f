#include "fglab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "fglab/cocycle.hpp"
#include "fglab/error.hpp"
#include "fglab/line_geometry.hpp"
#include "fglab/pattern_transport.hpp"
#include "fglab/recurrence_probe.hpp"

namespace fglab {

FullGroupElement pair_swap(FullGroupElement::ActionPtr odometer) {
  return make_element(std::move(odometer), {{"0", GroupWord{"t"}}, {"1", GroupWord{"t^-1"}}});
}

std::vector<FullGroupElement> default_family(const FullGroupElement::ActionPtr& action) {
  if (action->name() == "odometer") return {pair_swap(action)};
  return {identity_element(action)};
}

namespace {

struct Lemma {
  std::string status = "pass";
  Json witnesses = Json::array();
  Json parameters = Json::object();
  double seconds = 0;

  void check(bool ok, const Json& witness = nullptr) {
    if (!ok) {
      status = "fail";
      if (!witness.is_null()) witnesses.push_back(witness);
    }
  }
};

std::string hex(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

using Points = std::vector<BoundaryPoint>;

Points sym_diff(const Points& a, const Points& b) {
  Points out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Json point_list(const Points& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(p.to_string());
  return out;
}

bool holds_end(const std::vector<bool>& member, const GeodesicSegment& ell, std::size_t strip, bool plus_end) {
  const std::size_t w = std::min(strip, ell.vertices.size());
  for (std::size_t i = 0; i < w; ++i) {
    if (!member[plus_end ? ell.vertices[ell.vertices.size() - 1 - i] : ell.vertices[i]]) return false;
  }
  return true;
}

}  // namespace

VerificationReport run_verification(const FullGroupElement::ActionPtr& action, const std::vector<FullGroupElement>& f,
                                    const VerifyOptions& opt) {
  std::map<std::string, Lemma> lemmas;
  const auto run = [&](std::string_view id, const std::function<void(Lemma&)>& body) {
    Lemma& lemma = lemmas[std::string(id)];
    const auto start = std::chrono::steady_clock::now();
    try {
      body(lemma);
    } catch (const Error& e) {
      const bool precondition = e.kind() == ErrorKind::PreconditionNphi || e.kind() == ErrorKind::WindowTooSmall;
      lemma.status = precondition ? "skipped" : "fail";
      lemma.witnesses.push_back({{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
    }
    lemma.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  Json report;
  report["tool"] = "fglab";
  report["version"] = FGLAB_VERSION;
  report["action"] = {{"name", action->name()}, {"hash", action_hash(*action)}};
  report["seed"] = lab_seed();
  report["options"] = {{"radius", opt.radius},         {"n", opt.n},
                       {"ball_cap", opt.ball_cap},     {"depth_cap", opt.depth_cap},
                       {"order_cap", opt.order_cap},   {"random_pairs", opt.random_pairs},
                       {"transport_points", opt.transport_points}};
  Json fam_json = Json::array();
  for (const auto& phi : f) fam_json.push_back(element_to_json(phi));
  report["F"] = fam_json;

  std::optional<LineSetting> setting;
  try {
    setting = LineSetting::build(*action, opt.radius, opt.ball_cap);
  } catch (const Error& e) {
    for (auto id : kLemmaIds) {
      run(id, [&](Lemma&) { throw e; });
    }
  }

  if (setting) {
    const LineSetting& s = *setting;
    const FiniteGraph& g = s.ball.graph;
    const LineChart& chart = s.chart;
    const std::size_t strip = static_cast<std::size_t>(std::max<std::int64_t>(1, ceil_to_int(chart.m)));
    std::size_t max_d = 0;
    for (const auto& phi : f) max_d = std::max(max_d, displacement_bound(phi));

    report["chart_hash"] = hex(chart.hash());
    report["constants"] = {{"alpha", to_string(chart.alpha)},
                           {"beta", to_string(chart.beta)},
                           {"gamma", to_string(chart.gamma)},
                           {"m", to_string(chart.m)},
                           {"R", s.r_const},
                           {"d_phi", max_d},
                           {"N_phi", to_string(max_n_phi(f, s))},
                           {"ball_vertices", s.ball.size()}};

    // Random validated elements shared by the cocycle and displacement checks.
    std::mt19937_64 rng(lab_seed());
    std::vector<FullGroupElement> pool;
    for (std::size_t i = 0; i < 2 * opt.random_pairs; ++i) pool.push_back(random_element(action, rng, 3, 3));

    run("localfin", [&](Lemma& l) {
      const FiberReport fr = fiber_diameter_check(g, chart);
      l.parameters = {{"alpha", to_string(chart.alpha)}, {"beta", to_string(chart.beta)}, {"bound", to_string(fr.bound)}};
      l.check(fr.pass, {{"max_fiber_diameter", fr.max_fiber_diameter}, {"value", fr.worst_value}});
      if (fr.pass) l.witnesses.push_back({{"max_fiber_diameter", fr.max_fiber_diameter}});
    });

    run("biinf", [&](Lemma& l) {
      l.check(is_geodesic(g, s.ell), "diametral segment is not a geodesic");
      std::vector<std::size_t> radii;
      for (std::size_t r : {opt.radius / 4, opt.radius / 2, opt.radius}) {
        if (r > 0 && (radii.empty() || radii.back() != r)) radii.push_back(r);
      }
      Json growth = Json::array();
      std::vector<std::size_t> mids;
      for (std::size_t r : radii) {
        const SchreierBall b = build_ball(*action, r, opt.ball_cap);
        mids.push_back(max_geodesic_midpoint(b.graph, b.graph.base()));
        growth.push_back({{"radius", r}, {"midpoint", mids.back()}});
      }
      l.parameters = {{"segment_length", s.ell.length()}, {"growth", growth}};
      l.check(std::is_sorted(mids.begin(), mids.end()), "midpoint value decreased with the radius");
      l.check(mids.size() < 2 || mids.back() > mids.front(), "midpoint value does not grow");
    });

    run("m_geod", [&](Lemma& l) {
      const CoveringReport cov = m_covering_check(g, s.ell, chart.m, chart.margin);
      l.parameters = {{"m", to_string(chart.m)}, {"max_distance", cov.max_distance}};
      l.check(chart.m == m_constant(chart.alpha, chart.beta), "m differs from alpha^2 + 2 alpha beta");
      l.check(cov.pass, {{"worst_vertex", g.label(cov.worst_vertex)}, {"distance", cov.max_distance}});
    });

    run("boundY", [&](Lemma& l) {
      const BandReport band = boundary_band_check(g, chart, s.y);
      l.parameters = {{"upper", to_string(band.upper)}, {"boundary_size", s.y.boundary.size()}};
      Json bad = Json::array();
      for (Vertex v : band.violators) bad.push_back(g.label(v));
      l.check(band.pass, {{"violators", bad}});
    });

    run("cocycle_fin", [&](Lemma& l) {
      std::vector<std::pair<std::string, FullGroupElement>> elems;
      for (std::size_t i = 0; i < f.size(); ++i) elems.emplace_back("F[" + std::to_string(i) + "]", f[i]);
      for (const auto& gen : action->generators()) elems.emplace_back(gen.name, word_element(action, GroupWord{gen.name}));
      Json sizes = Json::object();
      for (const auto& [name, phi] : elems) {
        const CocycleValue c = compute_cocycle(phi, s.y, s.ball);
        sizes[name] = c.vertices.size();
        l.check(c.stabilized, {{"element", name}, {"reason", "not stabilized"}});
        l.check(c.containment_ok, {{"element", name}, {"reason", "escapes the len(g)-neighborhood of the boundary"}});
      }
      l.parameters = {{"sizes", sizes}};
    });

    run("cocycle_identity", [&](Lemma& l) {
      l.check(compute_cocycle(identity_element(action), s.y, s.ball).vertices.empty(), "c_id is not empty");
      std::size_t tested = 0;
      for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
        const auto& phi = pool[i];
        const auto& psi = pool[i + 1];
        const FullGroupElement prod = compose(phi, psi, opt.depth_cap);
        const std::size_t d = std::max({displacement_bound(phi), displacement_bound(psi), displacement_bound(prod)});
        if (s.ball.radius < 4 * d + 1) continue;
        const std::size_t r = s.ball.radius - 2 * d - 1;
        const CocycleValue c_phi = cocycle_value(phi, s.y, s.ball, r);
        const CocycleValue c_psi = cocycle_value(psi, s.y, s.ball, r);
        const CocycleValue c_prod = cocycle_value(prod, s.y, s.ball, r);
        Points moved;
        for (const auto& x : c_psi.points) moved.push_back(phi(x));
        std::sort(moved.begin(), moved.end());
        const Points expected = sym_diff(c_phi.points, moved);
        l.check(expected == c_prod.points,
                {{"pair", i / 2}, {"expected", point_list(expected)}, {"got", point_list(c_prod.points)}});
        ++tested;
      }
      l.parameters = {{"pairs", tested}};
      l.check(tested > 0, "no pair fits the ball");
    });

    run("kernel_stab", [&](Lemma& l) {
      std::vector<FullGroupElement> kernel{identity_element(action)};
      for (std::size_t i = 0; i < f.size(); ++i) {
        const bool in = stabilizer_test(f[i], s.y, s.ball);
        l.check(in, {{"element", "F[" + std::to_string(i) + "]"}, {"reason", "not in the stabilizer of Y"}});
        if (in) kernel.push_back(f[i]);
      }
      for (const auto& phi : pool) {
        if (kernel.size() >= 8) break;
        if (2 * displacement_bound(phi) + 1 <= s.ball.radius && stabilizer_test(phi, s.y, s.ball)) kernel.push_back(phi);
      }
      std::size_t products = 0;
      for (std::size_t a = 0; a < kernel.size(); ++a) {
        l.check(stabilizer_test(invert(kernel[a]), s.y, s.ball), {{"inverse_of", a}});
        for (std::size_t b = 0; b < kernel.size(); ++b) {
          l.check(stabilizer_test(compose(kernel[a], kernel[b], opt.depth_cap), s.y, s.ball), {{"product", {a, b}}});
          ++products;
        }
      }
      l.parameters = {{"kernel_elements", kernel.size()}, {"products", products}};
    });

    std::optional<RepetitionReport> rep;
    run("upp", [&](Lemma& l) {
      rep = repetition_radius(f, opt.n, s.ball, s.p);
      l.parameters = {{"n", opt.n},
                      {"r", rep->r},
                      {"window_radius", rep->window_radius},
                      {"candidates", rep->candidates},
                      {"matches", rep->matches.size()}};
    });

    run("d_phi", [&](Lemma& l) {
      std::vector<const FullGroupElement*> elems;
      for (const auto& phi : f) elems.push_back(&phi);
      for (const auto& phi : pool) elems.push_back(&phi);
      std::size_t checked = 0;
      for (const FullGroupElement* phi : elems) {
        const std::size_t d = displacement_bound(*phi);
        for (Vertex x = 0; x < s.ball.size(); ++x) {
          if (g.dist(x) + d > s.ball.radius) continue;
          const auto y = s.ball.find((*phi)(s.ball.points[x]));
          const Vertex src[] = {x};
          const bool near = y && multi_source_distances(g, src, nullptr, d)[*y] <= d;
          l.check(near, {{"vertex", g.label(x)}, {"d_phi", d}});
          ++checked;
          if (!near) break;
        }
      }
      l.parameters = {{"elements", elems.size()}, {"pairs_checked", checked}};
    });

    // Transports at the match points nearest to p.
    std::vector<TransportedHalfSpace> transports;
    std::optional<Error> transport_error;
    if (rep) {
      const auto from_p = bfs_distances(g, s.p);
      std::vector<Vertex> zs;
      for (Vertex z : rep->matches) {
        if (z != s.p) zs.push_back(z);
      }
      std::stable_sort(zs.begin(), zs.end(), [&](Vertex a, Vertex b) { return from_p[a] < from_p[b]; });
      if (zs.size() > opt.transport_points) zs.resize(opt.transport_points);
      try {
        for (Vertex z : zs) transports.push_back(transport_halfspace(f, z, opt.n, s, false));
      } catch (const Error& e) {
        transport_error = e;
      }
    }

    run("oneend", [&](Lemma& l) {
      l.check(holds_end(s.y.member, s.ell, strip, true), "+inf strip is not inside Y");
      std::vector<bool> complement(s.y.member.size());
      for (std::size_t v = 0; v < complement.size(); ++v) complement[v] = !s.y.member[v];
      l.check(holds_end(complement, s.ell, strip, false), "-inf strip is not inside the complement of Y");
      if (transport_error) throw *transport_error;
      for (const auto& t : transports) {
        l.check(t.ends_ok, {{"z", g.label(t.z)}, {"reason", t.witness}});
        l.check(holds_end(t.in_y_z, s.ell, strip, true), {{"z", g.label(t.z)}, {"reason", "+inf not in Y_z"}});
      }
      l.parameters = {{"strip", strip}, {"transports", transports.size()}};
    });

    run("stab_transport", [&](Lemma& l) {
      if (!rep) throw Error(ErrorKind::NoRepetition, "repetition radius unavailable");
      if (transport_error) throw *transport_error;
      Json points = Json::array();
      for (const auto& t : transports) {
        points.push_back({{"z", g.label(t.z)},
                          {"partition", t.partition_ok},
                          {"boundary", t.boundary_ok},
                          {"invariance", t.invariance_ok},
                          {"ends", t.ends_ok},
                          {"boundary_in_ball", t.boundary_in_ball_ok}});
        l.check(t.ok(), {{"z", g.label(t.z)}, {"reason", t.witness}});
      }
      l.parameters = {{"n", opt.n}, {"points", points}};
      l.check(transports.size() >= opt.transport_points,
              "only " + std::to_string(transports.size()) + " match points available");
    });

    std::optional<NestedFamily> family;
    std::optional<Error> family_error;
    try {
      family = nested_family(f, opt.n, s, rep ? std::optional<std::size_t>(rep->r) : std::nullopt, false);
    } catch (const Error& e) {
      family_error = e;
    }

    run("nesting", [&](Lemma& l) {
      if (family_error) throw *family_error;
      Json anchors = Json::array();
      for (const auto& a : family->anchors) anchors.push_back({{"i", a.index}, {"y", g.label(a.y)}, {"z", g.label(a.z)}});
      l.parameters = {{"r", family->r}, {"spacing", family->spacing}, {"anchors", anchors}};
      l.check(family->nesting_ok && family->invariance_ok && family->disjoint_ok, family->witness);
    });

    run("block_bound", [&](Lemma& l) {
      if (family_error) throw *family_error;
      Json sizes = Json::array();
      for (const auto& b : family->blocks) sizes.push_back(b.size());
      l.parameters = {{"U", family->u}, {"blocks", sizes}};
      l.check(family->bound_ok && family->local_ok, family->witness);
    });

    run("finite_order", [&](Lemma& l) {
      if (family_error) throw *family_error;
      const OrderReport order = finite_embedding_order(f, *family, s, opt.order_cap);
      l.parameters = {{"blocks", order.blocks}, {"brute", order.brute}};
      l.check(order.agree, "block order differs from the brute-force order");
    });

    run("recurrence", [&](Lemma& l) {
      std::vector<std::size_t> radii;
      for (std::size_t r = 1; r <= std::min<std::size_t>(opt.radius, 64); r *= 2) radii.push_back(r);
      const auto series = escape_series(g, radii);
      Json out = Json::array();
      for (const auto& pt : series) {
        out.push_back({{"radius", pt.radius}, {"escape", to_string(pt.probability)}});
        l.check(pt.probability > 0 && pt.probability <= 1, {{"radius", pt.radius}, {"reason", "out of (0,1]"}});
      }
      for (std::size_t i = 1; i < series.size(); ++i) {
        l.check(series[i].probability <= series[i - 1].probability, {{"radius", series[i].radius}, {"reason", "increased"}});
      }
      if (series.size() >= 2) l.check(series.back().probability < series.front().probability, "escape does not decay");
      l.parameters = {{"series", out}};
    });
  }

  Json list = Json::array();
  bool pass = true;
  for (auto id : kLemmaIds) {
    const Lemma& lemma = lemmas.at(std::string(id));
    Json entry = {{"id", id}, {"status", lemma.status}, {"witnesses", lemma.witnesses}, {"parameters", lemma.parameters}};
    if (opt.timing) entry["seconds"] = lemma.seconds;
    list.push_back(entry);
    pass = pass && lemma.status != "fail";
  }
  report["lemmas"] = list;
  report["pass"] = pass;
  return {report, pass};
}

}  // namespace fglab
