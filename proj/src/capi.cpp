// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/cwit.h"

#include <cstring>
#include <new>
#include <variant>

#include "cw/construct.hpp"
#include "cw/hybrid.hpp"
#include "cw/search.hpp"
#include "cw/serialize.hpp"
#include "cw/stretch.hpp"
#include "cw/structure.hpp"

struct cw_group {
  cw::FiniteGroup g;
};

struct cw_certificate {
  std::variant<cw::WitnessCertificate, cw::StretchCertificate> c;
};

struct cw_report {
  cw::VerificationReport r;
};

namespace {

using cw::Json;

thread_local std::string g_last_error;

template <class F>
cw_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CW_OK;
  } catch (const cw::Error& e) {
    g_last_error = e.what();
    return static_cast<cw_status>(e.status());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CW_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CW_INTERNAL;
  }
}

cw::Bounds to_bounds(const cw_bounds* b) {
  cw::Bounds out;
  if (!b) return out;
  CW_REQUIRE(b->enumeration > 0 && b->isomorphism > 0 && b->automorphism > 0,
             "bounds must be positive");
  out.enumeration = b->enumeration;
  out.isomorphism = b->isomorphism;
  out.automorphism = b->automorphism;
  return out;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(const Json& j, char** out) {
  CW_REQUIRE(out, "null output pointer");
  *out = dup(j.dump(2));
}

const cw::FiniteGroup& grp(const cw_group* g) {
  CW_REQUIRE(g, "null group handle");
  return g->g;
}

std::vector<cw::Subgroup> series_of(const cw::FiniteGroup& l, cw_series kind) {
  switch (kind) {
    case CW_SERIES_CENTRAL:
      if (!cw::is_nilpotent(l)) throw cw::HypothesisRefuted(l.label() + " is not nilpotent");
      return cw::central_series(l);
    case CW_SERIES_SQUARE_FREE:
      return cw::square_free_series(l);
    case CW_SERIES_AUTO:
      return cw::is_nilpotent(l) ? cw::central_series(l) : cw::square_free_series(l);
  }
  throw cw::InvalidArgument("unknown series kind");
}

const char* series_name(cw_series kind) {
  switch (kind) {
    case CW_SERIES_CENTRAL:
      return "central";
    case CW_SERIES_SQUARE_FREE:
      return "square-free";
    default:
      return "auto";
  }
}

std::array<cw::GroupSequence, 2> sequences(const cw::FiniteGroup& l1, const cw::FiniteGroup& l2,
                                           cw_series kind, const cw::Bounds& bounds) {
  if (l1.order() != l2.order()) throw cw::HypothesisRefuted("orders differ");
  if (kind == CW_SERIES_AUTO && cw::is_nilpotent(l1) != cw::is_nilpotent(l2))
    kind = CW_SERIES_SQUARE_FREE;
  auto [a, b] = cw::pad_series(series_of(l1, kind), series_of(l2, kind));
  return {cw::series_to_sequence(l1, a, bounds), cw::series_to_sequence(l2, b, bounds)};
}

Json orders_of(const std::vector<cw::Subgroup>& chain) {
  Json o = Json::array();
  for (const auto& s : chain) o.push_back(s.order());
  return o;
}

Json histogram(const cw::FiniteGroup& g) {
  Json h = Json::object();
  for (auto [k, v] : cw::order_histogram(g)) h[std::to_string(k)] = v;
  return h;
}

// Examples reproduced by `cwit examples`.
Json run_examples(const cw::Bounds& bounds) {
  using namespace cw;
  Json list = Json::array();
  auto record = [&](const std::string& name, auto&& body) {
    bool ok = false;
    std::string detail;
    try {
      detail = body(ok);
    } catch (const Error& e) {
      detail = std::string(e.what());
    }
    list.push_back(Json{{"name", name}, {"passed", ok}, {"detail", detail}});
  };

  record("hybrid F21 S3", [&](bool& ok) {
    FiniteGroup f21 = group_from_name("F21"), s3 = symmetric(3);
    std::optional<Homomorphism> theta;
    for_each_homomorphism(f21, s3, [&](const Homomorphism& h) {
      if (image(h).order() != 3) return true;
      theta = h;
      return false;
    });
    HybridWreath hw = hybrid_wreath(*theta, bounds);
    ok = hw.carrier.order() == 294 && hw.kernel.order() == 49 &&
         is_elementary_abelian(hw.kernel.group()) && hw.base.order() == 147;
    return "|HW| = " + std::to_string(hw.carrier.order()) +
           ", |ker| = " + std::to_string(hw.kernel.order()) +
           ", |BW| = " + std::to_string(hw.base.order());
  });

  record("goodwit p=2 n=3", [&](bool& ok) {
    WitnessCertificate c = goodwit_certificate(2, 3);
    bool v = verify_witness(c, c.quotients[0], c.quotients[1], bounds).passed();
    std::array<Homomorphism, 2> pi;
    for (int d = 0; d < 2; ++d) pi[d] = quotient(c.section(d).domain).map;
    WitnessCertificate w = compose_witness(c, pi, std::nullopt, std::nullopt, bounds);
    bool vw = verify_witness(w, w.quotients[0], w.quotients[1], bounds).passed();
    ok = v && vw && c.g.order() == 64 && w.quotients[0].order() == 4;
    return "G of order 64 verified; composed witness for quotients of order 4 verified";
  });

  record("Z6 S3", [&](bool& ok) {
    FiniteGroup z6 = cyclic(6), s3 = symmetric(3);
    WitnessCertificate c = witness_square_free(z6, s3, bounds);
    ok = c.g.order() == 18 && verify_witness(c, z6, s3, bounds).passed();
    return "witness of order " + std::to_string(c.g.order());
  });

  const std::vector<std::string> eight{"Z8", "Z2xZ4", "Z2^3", "D8", "Q8"};
  for (std::size_t i = 0; i < eight.size(); ++i)
    for (std::size_t j = i + 1; j < eight.size(); ++j)
      record("order 8 " + eight[i] + " " + eight[j], [&](bool& ok) {
        FiniteGroup a = group_from_name(eight[i]), b = group_from_name(eight[j]);
        WitnessCertificate c = witness_nilpotent(a, b, bounds);
        ok = verify_witness(c, a, b, bounds).passed();
        return "witness of order " + std::to_string(c.g.order());
      });

  bool all = true;
  for (const Json& e : list) all = all && e["passed"].get<bool>();
  return Json{{"passed", all}, {"examples", std::move(list)}};
}

}  // namespace

extern "C" {

const char* cw_version(void) { return "1.0.0"; }

const char* cw_last_error(void) { return g_last_error.c_str(); }

const char* cw_status_name(cw_status s) {
  switch (s) {
    case CW_OK:
      return "ok";
    case CW_REFUTED:
      return "refuted";
    case CW_UNDECIDED:
      return "undecided";
    case CW_MALFORMED:
      return "malformed";
    default:
      return "internal";
  }
}

void cw_bounds_default(cw_bounds* out) {
  if (!out) return;
  cw::Bounds b;
  out->enumeration = b.enumeration;
  out->isomorphism = b.isomorphism;
  out->automorphism = b.automorphism;
}

void cw_string_free(char* s) { std::free(s); }

cw_status cw_group_new(const char* desc, const cw_bounds* bounds, cw_group** out) {
  return guard([&] {
    CW_REQUIRE(desc && out, "null argument");
    std::string s(desc);
    auto first = s.find_first_not_of(" \t\r\n");
    cw::FiniteGroup g;
    if (first != std::string::npos && (s[first] == '{' || s[first] == '"')) {
      Json j;
      try {
        j = Json::parse(s);
      } catch (const Json::exception& e) {
        throw cw::InvalidArgument(std::string("group descriptor: ") + e.what());
      }
      g = cw::group_from_json(j, to_bounds(bounds));
    } else {
      g = cw::group_from_name(s, to_bounds(bounds));
    }
    *out = new cw_group{std::move(g)};
  });
}

void cw_group_free(cw_group* g) { delete g; }

size_t cw_group_order(const cw_group* g) { return g ? g->g.order() : 0; }

size_t cw_group_degree(const cw_group* g) { return g ? g->g.degree() : 0; }

cw_status cw_group_to_json(const cw_group* g, char** out) {
  return guard([&] { emit(cw::group_to_json(grp(g)), out); });
}

cw_status cw_group_report(const cw_group* g, const cw_bounds* bounds, char** out) {
  return guard([&] {
    const cw::FiniteGroup& x = grp(g);
    (void)to_bounds(bounds);
    Json j{{"label", x.label()},
           {"order", x.order()},
           {"degree", x.degree()},
           {"abelian", x.is_abelian()},
           {"nilpotent", cw::is_nilpotent(x)},
           {"center_order", cw::center(x).order()},
           {"derived_order", cw::derived_subgroup(x).order()},
           {"exponent", cw::exponent(x)},
           {"order_histogram", histogram(x)}};
    emit(j, out);
  });
}

cw_status cw_limit_report(const char* system_json, const cw_bounds* bounds, char** out) {
  return guard([&] {
    CW_REQUIRE(system_json, "null argument");
    Json j;
    try {
      j = Json::parse(system_json);
    } catch (const Json::exception& e) {
      throw cw::InvalidArgument(std::string("system descriptor: ") + e.what());
    }
    cw::InverseSystem x = cw::system_from_json(j, to_bounds(bounds));
    cw::LimitGroup lim = cw::limit(x, to_bounds(bounds));
    Json proj = Json::array();
    for (const auto& p : lim.projections) proj.push_back(p.is_surjective());
    emit(Json{{"nodes", x.size()},
              {"in_forest", x.poset().is_in_forest()},
              {"surjective_system", x.is_surjective()},
              {"limit_order", lim.group.order()},
              {"projections_surjective", std::move(proj)}},
         out);
  });
}

cw_status cw_wreath_report(const cw_group* g, const cw_group* h, size_t k,
                           const cw_bounds* bounds, char** out) {
  return guard([&] {
    const cw::FiniteGroup& G = grp(g);
    const cw::FiniteGroup& H = grp(h);
    std::optional<cw::Subgroup> sub;
    for (const auto& s : cw::all_subgroups(H))
      if (s.order() == k) {
        sub = s;
        break;
      }
    if (!sub) throw cw::InvalidArgument("no subgroup of order " + std::to_string(k));
    cw::GroupAction a = cw::coset_action(*sub);
    cw::Wreath w(G, a);
    cw::FiniteGroup r = w.realize(to_bounds(bounds));
    emit(Json{{"G", G.label()},
              {"H", H.label()},
              {"points", a.degree()},
              {"action_kernel_order", a.kernel().order()},
              {"transitive", a.is_transitive()},
              {"faithful", a.is_faithful()},
              {"order", r.order()},
              {"order_formula", w.order() ? Json(*w.order()) : Json(nullptr)}},
         out);
  });
}

cw_status cw_hybrid_report(const cw_group* g, const cw_group* h, const cw_group* image,
                           const cw_bounds* bounds, char** out) {
  return guard([&] {
    const cw::FiniteGroup& G = grp(g);
    const cw::FiniteGroup& H = grp(h);
    const cw::FiniteGroup& I = grp(image);
    cw::Bounds b = to_bounds(bounds);
    std::optional<cw::Homomorphism> theta;
    cw::for_each_homomorphism(
        G, H,
        [&](const cw::Homomorphism& f) {
          cw::Subgroup im = cw::image(f);
          if (im.order() != I.order() || !cw::find_isomorphism(im.group(), I, b)) return true;
          theta = f;
          return false;
        },
        b);
    if (!theta) throw cw::HypothesisRefuted("no homomorphism with an image isomorphic to " +
                                            I.label());
    cw::HybridWreath hw = cw::hybrid_wreath(*theta, b);
    Json j{{"G", G.label()},
           {"H", H.label()},
           {"theta_image_order", hw.theta_image.order()},
           {"normal", hw.normal},
           {"points", hw.points()},
           {"order", hw.carrier.order()},
           {"kernel_order", hw.kernel.order()},
           {"kernel_elementary_abelian", cw::is_elementary_abelian(hw.kernel.group())},
           {"base_order", hw.base.order()}};
    if (hw.normal) {
      bool surj = true;
      for (const auto& e : cw::evaluation_maps(hw)) surj = surj && e.is_surjective();
      cw::BwLimit bl = cw::bw_as_limit(hw, b);
      j["evaluations_surjective"] = surj;
      j["base_is_limit"] = cw::verify_bw_limit(hw, bl);
      j["series_factor_orders"] = {hw.kernel.order(), hw.base.order() / hw.kernel.order(),
                                   hw.carrier.order() / hw.base.order()};
    }
    emit(j, out);
  });
}

cw_status cw_series_report(const cw_group* l, cw_series kind, char** out) {
  return guard([&] {
    const cw::FiniteGroup& L = grp(l);
    auto chain = series_of(L, kind);
    Json factors = Json::array();
    for (std::size_t i = 1; i < chain.size(); ++i)
      factors.push_back(chain[i].order() / chain[i - 1].order());
    emit(Json{{"group", L.label()},
              {"series", series_name(kind)},
              {"orders", orders_of(chain)},
              {"factor_orders", std::move(factors)}},
         out);
  });
}

cw_status cw_comp_check(const cw_group* l1, const cw_group* l2, cw_series kind,
                        const cw_bounds* bounds, char** out) {
  return guard([&] {
    cw::Bounds b = to_bounds(bounds);
    auto s = sequences(grp(l1), grp(l2), kind, b);
    auto comp = cw::comp_membership(s[0], s[1], b);
    const std::size_t l = s[0].length();
    Json j{{"length", l}, {"member", comp.has_value()}};
    if (comp) {
      j["verified"] = cw::verify_comp_data(s[0], s[1], *comp);
      // Only levels 2 .. l-1 carry a condition.
      Json levels = Json::array();
      for (std::size_t i = 2; i + 1 <= l; ++i)
        levels.push_back(Json{{"level", i}, {"trivial_restrictions", bool(comp->central[i])}});
      j["constrained_levels"] = std::move(levels);
    }
    j["message"] = std::string(comp ? "member of" : "not a member of") + " Comp_" +
                   std::to_string(l);
    emit(j, out);
  });
}

cw_status cw_witness_build(const cw_group* l1, const cw_group* l2, cw_series kind, cw_mode mode,
                           const cw_bounds* bounds, cw_certificate** out) {
  return guard([&] {
    CW_REQUIRE(out, "null output pointer");
    cw::Bounds b = to_bounds(bounds);
    auto s = sequences(grp(l1), grp(l2), kind, b);
    auto comp = cw::comp_membership(s[0], s[1], b);
    if (!comp) throw cw::HypothesisRefuted("series fail the Comp condition");
    auto c = std::make_unique<cw_certificate>();
    if (mode == CW_MODE_STRETCH)
      c->c = cw::build_good_witness_stretch(s[0], s[1], *comp, b);
    else
      c->c = cw::build_good_witness(s[0], s[1], *comp, b);
    *out = c.release();
  });
}

void cw_certificate_free(cw_certificate* c) { delete c; }

cw_mode cw_certificate_mode(const cw_certificate* c) {
  return c && c->c.index() == 1 ? CW_MODE_STRETCH : CW_MODE_ENUMERATED;
}

uint64_t cw_certificate_order(const cw_certificate* c) {
  if (!c) return 0;
  if (auto* w = std::get_if<cw::WitnessCertificate>(&c->c)) return w->g.order();
  return std::get<cw::StretchCertificate>(c->c).g.order();
}

cw_status cw_certificate_to_json(const cw_certificate* c, char** out) {
  return guard([&] {
    CW_REQUIRE(c, "null certificate");
    if (auto* w = std::get_if<cw::WitnessCertificate>(&c->c))
      emit(cw::certificate_to_json(*w), out);
    else
      emit(cw::stretch_to_json(std::get<cw::StretchCertificate>(c->c)), out);
  });
}

cw_status cw_certificate_from_json(const char* json, const cw_bounds* bounds,
                                   cw_certificate** out) {
  return guard([&] {
    CW_REQUIRE(json && out, "null argument");
    Json j;
    try {
      j = Json::parse(json);
    } catch (const Json::exception& e) {
      throw cw::InvalidArgument(std::string("certificate: ") + e.what());
    }
    *out = new cw_certificate{cw::certificate_from_json(j, to_bounds(bounds))};
  });
}

cw_status cw_certificate_quotient(const cw_certificate* c, int d, cw_group** out) {
  return guard([&] {
    CW_REQUIRE(c && out && (d == 0 || d == 1), "bad argument");
    if (auto* w = std::get_if<cw::WitnessCertificate>(&c->c))
      *out = new cw_group{w->quotients[d]};
    else
      *out = new cw_group{std::get<cw::StretchCertificate>(c->c).quotients[d]};
  });
}

cw_status cw_certificate_verify(const cw_certificate* c, const cw_group* l1, const cw_group* l2,
                                const cw_bounds* bounds, size_t samples, uint64_t seed,
                                cw_report** out) {
  return guard([&] {
    CW_REQUIRE(c && out, "null argument");
    auto r = std::make_unique<cw_report>();
    if (auto* w = std::get_if<cw::WitnessCertificate>(&c->c))
      r->r = cw::verify_witness(*w, grp(l1), grp(l2), to_bounds(bounds));
    else
      r->r = cw::verify_stretch(std::get<cw::StretchCertificate>(c->c), grp(l1), grp(l2),
                                {samples, seed});
    *out = r.release();
  });
}

void cw_report_free(cw_report* r) { delete r; }

int cw_report_passed(const cw_report* r) { return r && r->r.passed() ? 1 : 0; }

size_t cw_report_size(const cw_report* r) { return r ? r->r.checks.size() : 0; }

cw_status cw_report_check(const cw_report* r, size_t i, const char** name, int* passed,
                          const char** detail) {
  return guard([&] {
    CW_REQUIRE(r && i < r->r.checks.size(), "check index out of range");
    const auto& c = r->r.checks[i];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (detail) *detail = c.detail.c_str();
  });
}

cw_status cw_report_to_json(const cw_report* r, char** out) {
  return guard([&] {
    CW_REQUIRE(r, "null report");
    emit(cw::report_to_json(r->r), out);
  });
}

cw_status cw_examples_run(const cw_bounds* bounds, char** out) {
  return guard([&] { emit(run_examples(to_bounds(bounds)), out); });
}

}  // extern "C"
