// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/serialize.hpp"

#include "cw/construct.hpp"

namespace cw {

namespace {

// nlohmann throws its own exceptions on type mismatches; turn them into ours.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

std::size_t param(const Json& p, std::size_t i) {
  CW_REQUIRE(p.is_array() && i < p.size() && p[i].is_number_unsigned(),
             "group descriptor: missing numeric parameter " + std::to_string(i));
  return p[i].get<std::size_t>();
}

Perm perm_from_json(const Json& j, std::size_t degree) {
  Perm p = j.get<Perm>();
  CW_REQUIRE(p.size() == degree && perm_is_valid(p), "descriptor: invalid permutation");
  return p;
}

FiniteGroup group_from_kind(const std::string& kind, const Json& p, const Bounds& bounds) {
  if (kind == "name") return group_from_name(p.at(0).get<std::string>(), bounds);
  if (kind == "cyclic") return cyclic(param(p, 0));
  if (kind == "symmetric") return symmetric(param(p, 0));
  if (kind == "alternating") return alternating(param(p, 0));
  if (kind == "dihedral") return dihedral(param(p, 0));
  if (kind == "dicyclic") return dicyclic(param(p, 0));
  if (kind == "elementary_abelian") return elementary_abelian(param(p, 0), param(p, 1));
  if (kind == "frobenius") return frobenius(param(p, 0), param(p, 1));
  if (kind == "direct_product") {
    std::vector<FiniteGroup> fs;
    for (const Json& f : p) fs.push_back(group_from_json(f, bounds));
    return direct_product(fs, bounds).group;
  }
  if (kind == "semidirect") {
    CW_REQUIRE(p.is_array() && p.size() == 3, "semidirect: params are [P, Q, action]");
    FiniteGroup n = group_from_json(p[0], bounds);
    FiniteGroup q = group_from_json(p[1], bounds);
    std::vector<Homomorphism> action;
    for (const Json& a : p[2]) action.push_back(hom_from_json(a, n, n));
    return semidirect(n, q, action, bounds).group;
  }
  throw InvalidArgument("group descriptor: unknown kind '" + kind + "'");
}

}  // namespace

Json group_to_json(const FiniteGroup& g) {
  Json gens = Json::array();
  for (Elem s : g.generators()) gens.push_back(g.perm_copy(s));
  return Json{{"label", g.label()},
              {"degree", g.degree()},
              {"order", g.order()},
              {"generators", std::move(gens)}};
}

FiniteGroup group_from_json(const Json& j, const Bounds& bounds) {
  return guarded("group descriptor", [&] {
    if (j.is_string()) return group_from_name(j.get<std::string>(), bounds);
    CW_REQUIRE(j.is_object(), "group descriptor must be a string or an object");
    std::string label = j.value("label", "");
    FiniteGroup g;
    if (j.contains("name")) {
      g = group_from_name(j["name"].get<std::string>(), bounds);
    } else if (j.contains("kind")) {
      g = group_from_kind(j["kind"].get<std::string>(), j.value("params", Json::array()), bounds);
    } else {
      std::size_t degree = j.at("degree").get<std::size_t>();
      std::vector<Perm> gens;
      for (const Json& p : j.at("generators")) gens.push_back(perm_from_json(p, degree));
      g = FiniteGroup::from_generators(degree, gens, bounds, label);
    }
    if (j.contains("order"))
      CW_REQUIRE(j["order"].get<std::size_t>() == g.order(),
                 "group descriptor: stated order " + j["order"].dump() + " but generated " +
                     std::to_string(g.order()));
    return label.empty() ? g : g.relabeled(label);
  });
}

Json hom_to_json(const Homomorphism& f) {
  Json imgs = Json::array();
  for (Elem s : f.source().generators()) imgs.push_back(f.target().perm_copy(f(s)));
  return Json{{"label", f.label()}, {"images", std::move(imgs)}};
}

Homomorphism hom_from_json(const Json& j, const FiniteGroup& src, const FiniteGroup& dst) {
  return guarded("homomorphism descriptor", [&] {
    const Json& imgs = j.is_array() ? j : j.at("images");
    CW_REQUIRE(imgs.size() == src.generators().size(),
               "homomorphism descriptor: need one image per source generator");
    std::vector<Elem> e;
    for (const Json& p : imgs) {
      auto x = dst.find(perm_from_json(p, dst.degree()));
      CW_REQUIRE(x.has_value(), "homomorphism descriptor: image is not in the target");
      e.push_back(*x);
    }
    return Homomorphism::from_images(src, dst, e, j.is_object() ? j.value("label", "") : "");
  });
}

Json poset_to_json(const Poset& p) {
  Json names = Json::array(), leq = Json::array();
  for (Node i = 0; i < p.size(); ++i) {
    names.push_back(p.name(i));
    for (Node j : p.upper_covers(i)) leq.push_back({i, j});
  }
  return Json{{"nodes", std::move(names)}, {"leq", std::move(leq)}};
}

Poset poset_from_json(const Json& j) {
  return guarded("poset descriptor", [&] {
    std::size_t n;
    std::vector<std::string> names;
    if (j.at("nodes").is_array()) {
      names = j["nodes"].get<std::vector<std::string>>();
      n = names.size();
    } else {
      n = j["nodes"].get<std::size_t>();
    }
    auto node = [&](const Json& x) -> Node {
      if (x.is_number_unsigned()) return x.get<Node>();
      auto it = std::find(names.begin(), names.end(), x.get<std::string>());
      CW_REQUIRE(it != names.end(), "poset descriptor: unknown node " + x.dump());
      return static_cast<Node>(it - names.begin());
    };
    std::vector<std::pair<Node, Node>> leq;
    for (const Json& e : j.value("leq", Json::array())) {
      CW_REQUIRE(e.is_array() && e.size() == 2, "poset descriptor: leq entries are pairs");
      leq.emplace_back(node(e[0]), node(e[1]));
    }
    return Poset(n, leq, names);
  });
}

InverseSystem system_from_json(const Json& j, const Bounds& bounds) {
  return guarded("system descriptor", [&] {
    Poset p = poset_from_json(j.at("poset"));
    std::vector<FiniteGroup> groups;
    for (const Json& g : j.at("groups")) groups.push_back(group_from_json(g, bounds));
    CW_REQUIRE(groups.size() == p.size(), "system descriptor: one group per node");
    std::vector<Transition> ts;
    for (const Json& t : j.value("transitions", Json::array())) {
      Node lo = t.at("lower").get<Node>(), up = t.at("upper").get<Node>();
      CW_REQUIRE(lo < p.size() && up < p.size(), "system descriptor: node out of range");
      ts.push_back({lo, up, hom_from_json(t, groups[up], groups[lo])});
    }
    return InverseSystem(p, groups, ts);
  });
}

Json provenance_to_json(const Provenance& p) {
  Json kids = Json::array();
  for (const auto& c : p.children) kids.push_back(provenance_to_json(c));
  return Json{{"kind", p.kind},
              {"label", p.label},
              {"order", p.order},
              {"evidence", p.evidence},
              {"children", std::move(kids)}};
}

Provenance provenance_from_json(const Json& j) {
  Provenance p;
  p.kind = j.at("kind").get<std::string>();
  p.label = j.value("label", "");
  p.order = j.value("order", std::size_t{0});
  p.evidence = j.value("evidence", std::vector<std::string>{});
  for (const Json& c : j.value("children", Json::array()))
    p.children.push_back(provenance_from_json(c));
  return p;
}

Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"passed", r.passed()}, {"checks", std::move(checks)}};
}

Json certificate_to_json(const WitnessCertificate& c) {
  Json good = Json::array();
  for (const auto& g : c.good) good.push_back(Json{{"normal", g.normal}, {"section", g.section}});
  return Json{{"format", "compatwit-certificate"},
              {"version", 1},
              {"mode", "enumerated"},
              {"group", group_to_json(c.g)},
              {"quotients", {group_to_json(c.quotients[0]), group_to_json(c.quotients[1])}},
              {"p", {c.p[0], c.p[1]}},
              {"kernels", {c.kernels[0], c.kernels[1]}},
              {"kernel_iso", c.kernel_iso},
              {"good", std::move(good)},
              {"provenance", provenance_to_json(c.provenance)}};
}

WitnessCertificate certificate_from_json(const Json& j, const Bounds& bounds) {
  return guarded("certificate", [&] {
    CW_REQUIRE(j.value("format", "") == "compatwit-certificate",
               "certificate: not a compatwit certificate file");
    CW_REQUIRE(j.value("mode", "") == "enumerated",
               "certificate: only enumerated certificates can be re-verified from file");
    WitnessCertificate c;
    c.g = group_from_json(j.at("group"), bounds);
    for (int d = 0; d < 2; ++d) {
      c.quotients[d] = group_from_json(j.at("quotients").at(d), bounds);
      c.p[d] = j.at("p").at(d).get<std::vector<Elem>>();
      c.kernels[d] = j.at("kernels").at(d).get<std::vector<Elem>>();
      c.good[d].normal = j.at("good").at(d).at("normal").get<std::vector<Elem>>();
      c.good[d].section = j.at("good").at(d).at("section").get<std::vector<Elem>>();
    }
    c.kernel_iso = j.at("kernel_iso").get<std::vector<Elem>>();
    if (j.contains("provenance")) c.provenance = provenance_from_json(j["provenance"]);
    return c;
  });
}

Json stretch_to_json(const StretchCertificate& c) {
  auto pairs = [](const std::vector<Pair>& xs) {
    Json out = Json::array();
    for (Pair x : xs) out.push_back({x.a, x.b});
    return out;
  };
  Json gens = Json::array(), p = Json::array(), kgens = pairs(c.kernel_generators(0)), kimg;
  for (Pair x : c.g.generators()) gens.push_back(c.g.perm(x));
  for (int d = 0; d < 2; ++d) {
    Json imgs = Json::array();
    for (Pair x : c.g.generators()) imgs.push_back(c.project(d, x));
    p.push_back(std::move(imgs));
  }
  std::vector<Pair> images;
  for (Pair x : c.kernel_generators(0)) images.push_back(c.kernel_map(x));
  kimg = pairs(images);
  return Json{{"format", "compatwit-certificate"},
              {"version", 1},
              {"mode", "stretch"},
              {"order", c.g.order()},
              {"degree", c.g.degree()},
              {"sides", {group_to_json(c.g.side(0)), group_to_json(c.g.side(1))}},
              {"generators", std::move(gens)},
              {"quotients", {group_to_json(c.quotients[0]), group_to_json(c.quotients[1])}},
              {"p_generator_images", std::move(p)},
              {"kernel_generators", std::move(kgens)},
              {"kernel_iso_images", std::move(kimg)},
              {"provenance", provenance_to_json(c.provenance)}};
}

}  // namespace cw
