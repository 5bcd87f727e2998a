// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// Acceptance run: one [PASS]/[FAIL] line per criterion. Criterion 9 (stretch
// mode) is reported on its own line and does not affect the exit status.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cw/construct.hpp"
#include "cw/cwit.h"
#include "cw/hybrid.hpp"
#include "cw/search.hpp"
#include "cw/serialize.hpp"
#include "cw/stretch.hpp"
#include "cw/structure.hpp"
#include "cw/witness.hpp"
#include "oracle.hpp"
#include "random_instances.hpp"

using namespace cw;

namespace {

// Wall-clock limits in seconds.
constexpr double kHybridSeconds = 5;
constexpr double kEmbeddingSeconds = 30;
constexpr double kLengthTwoSeconds = 5;
constexpr double kNilpotentSeconds = 600;
constexpr double kGoodwitSeconds = 5;
constexpr double kStepSeconds = 60;

constexpr int kRandomHybrids = 20;
constexpr int kEmbeddings = 200;
constexpr int kSystems = 200;
constexpr std::size_t kStretchSamples = 10000;

// Exhaustive homomorphism check below this many pairs, sampled above.
constexpr std::size_t kExhaustivePairs = 1'000'000;
constexpr std::size_t kSampledPairs = 200'000;

struct Outcome {
  bool passed = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) note << "first failure: " << what;
      passed = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool run(int id, const std::string& title, double limit,
         const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.note << "exception: " << e.what();
  }
  double s = seconds_since(t0);
  if (limit > 0 && s >= limit) {
    o.passed = false;
    o.note << " over the " << limit << " s limit";
  }
  std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << id << " " << title << " ("
            << std::fixed;
  std::cout.precision(2);
  std::cout << s << " s)";
  if (!o.note.str().empty()) std::cout << " " << o.note.str();
  std::cout << std::endl;
  return o.passed;
}

bool hom_on_pairs(const Homomorphism& f, std::mt19937& rng) {
  std::size_t n = f.source().order();
  if (n * n <= kExhaustivePairs) return oracle::is_hom_all_pairs(f);
  const FiniteGroup& g = f.source();
  const FiniteGroup& h = f.target();
  for (std::size_t i = 0; i < kSampledPairs; ++i) {
    Elem x = rng() % n, y = rng() % n;
    if (f(g.mul(x, y)) != h.mul(f(x), f(y))) return false;
  }
  return true;
}

void check_report(Outcome& o, const VerificationReport& r, const std::string& what) {
  for (const auto& c : r.checks) o.expect(c.passed, what + ": " + c.name + " " + c.detail);
}

// First subgroup of order n, cyclic ones first.
Subgroup normal_of_order(const FiniteGroup& g, std::size_t n) {
  auto subs = normal_subgroups(g);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& s : subs)
      if (s.order() == n && (pass == 1 || exponent(s.group()) == n)) return s;
  throw InvalidArgument("no normal subgroup of order " + std::to_string(n));
}

GroupSequence two_step(const FiniteGroup& l, std::size_t mid) {
  return series_to_sequence(l, {Subgroup::trivial(l), normal_of_order(l, mid), Subgroup::whole(l)});
}

HybridWreath example_hybrid() {
  return hybrid_wreath(rnd::hom_with_image(group_from_name("F21"), symmetric(3), 3));
}

void criterion1(Outcome& o) {
  HybridWreath hw = example_hybrid();
  const FiniteGroup& g = hw.g();
  o.expect(hw.normal, "theta(G) normal in H");
  o.expect(hw.carrier.order() == 294, "|HW| = 294");
  o.expect(hw.kernel.order() == 49, "|ker p_theta| = 49");
  o.expect(is_elementary_abelian(hw.kernel.group()), "kernel elementary abelian");
  o.expect(hw.base.order() == 147, "|BW| = 147");
  o.expect(hw.kernel.is_normal() && hw.base.is_normal() && hw.kernel.subset_of(hw.base),
           "1 <= ker <= BW <= HW normal");
  o.expect(hw.kernel.order() == 49 && hw.base.order() / hw.kernel.order() == 3 &&
               hw.carrier.order() / hw.base.order() == 2,
           "factor orders 49, 3, 2");

  // BW inside G^2 through the two evaluation maps.
  auto ev = evaluation_maps(hw);
  o.expect(ev.size() == 2, "two evaluation maps");
  std::set<std::pair<Elem, Elem>> pairs;
  for (Elem e = 0; e < hw.base.order(); ++e) pairs.insert({ev[0](e), ev[1](e)});
  o.expect(pairs.size() == 147, "BW embeds in G^2");
  o.expect(pairs.size() < g.order() * g.order(), "BW proper in G^2");
  for (int k = 0; k < 2; ++k) {
    std::set<Elem> coord;
    for (auto [x, y] : pairs) coord.insert(k == 0 ? x : y);
    o.expect(coord.size() == g.order(), "coordinate projection surjective");
  }
  o.note << "|HW| " << hw.carrier.order() << ", |ker| " << hw.kernel.order() << ", |BW| "
         << hw.base.order();
}

void criterion2(Outcome& o) {
  std::mt19937 rng(2);
  auto one = [&](const HybridWreath& hw) {
    BwLimit bl = bw_as_limit(hw);
    o.expect(verify_bw_limit(hw, bl), "identification commutes with evaluations and p_theta");
    o.expect(oracle::is_bijective_table(bl.identification), "identification bijective");
    o.expect(hom_on_pairs(bl.identification, rng), "identification homomorphism");
  };
  one(example_hybrid());
  std::size_t largest = 0;
  for (int i = 0; i < kRandomHybrids; ++i) {
    HybridWreath hw = hybrid_wreath(rnd::random_normal_hybrid_theta(rng));
    o.expect(hw.h().order() <= 24 && kernel(hw.theta).order() <= 8 && hw.points() <= 3,
             "instance within size limits");
    largest = std::max(largest, hw.base.order());
    one(hw);
  }
  o.note << "1 + " << kRandomHybrids << " hybrids, largest |BW| " << largest;
}

void criterion3(Outcome& o) {
  std::mt19937 rng(3);
  for (int i = 0; i < kEmbeddings; ++i) {
    GroupAction a = rnd::random_transitive_action(rng, 8);
    Point w = rng() % a.degree();
    StandardEmbedding e(a, rnd::random_transversal(rng, a, w));
    StandardEmbedding l(a, rnd::random_transversal(rng, a, w));
    const FiniteGroup& g = a.group();
    const Wreath& wr = e.wreath();
    o.expect(g.order() <= 60, "|G| <= 60");
    o.expect(e.verify() && l.verify(), "library embedding check");

    // Oracle: injective and multiplicative over all pairs.
    std::vector<WreathElement> img(g.order());
    std::set<Perm> perms;
    for (Elem x = 0; x < g.order(); ++x) {
      img[x] = e(x);
      perms.insert(wr.to_perm(img[x]));
    }
    o.expect(perms.size() == g.order(), "embedding injective");
    for (Elem x = 0; x < g.order(); ++x)
      for (Elem y = 0; y < g.order(); ++y)
        if (wr.mul(img[x], img[y]) != img[g.mul(x, y)]) {
          o.expect(false, "embedding multiplicative");
          x = g.order() - 1;
          break;
        }

    // Conjugator entries are stabilizer elements given by their index in G.
    std::vector<Elem> f_local;
    bool conj = true;
    for (Elem y : embedding_conjugator(e, l)) {
      conj = conj && e.stabilizer().contains(y);
      f_local.push_back(conj ? e.stabilizer().to_local(y) : 0);
    }
    WreathElement f = wr.base_element(f_local);
    for (Elem x = 0; x < g.order() && conj; ++x) conj = wr.conj(f, img[x]) == l(x);
    o.expect(conj, "conjugator relates the two transversals");
  }
  o.note << kEmbeddings << " instances";
}

void criterion4(Outcome& o) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < kSystems; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto parent = rnd::random_forest(rng, n);
    Poset p = rnd::forest_poset(parent);
    o.expect(p.is_in_forest(), "in-forest poset");
    FiniteGroup g = rnd::pick(rng, rnd::names_upto_24());
    auto normals = rnd::random_normals(rng, g, parent);
    auto qx = rnd::system_of_quotients(g, p, normals);
    auto all = normal_subgroups(g);
    Subgroup k = all[rng() % all.size()];
    std::vector<Subgroup> bigger;
    for (const auto& nn : normals) bigger.push_back(join(nn, k));
    auto qy = rnd::system_of_quotients(g, p, bigger);
    std::vector<Homomorphism> level;
    for (Node i = 0; i < n; ++i) {
      std::vector<Elem> imgs;
      for (Elem s : g.generators()) imgs.push_back(qy.quotients[i].map(s));
      level.push_back(
          Homomorphism::from_images(qx.quotients[i].group, qy.quotients[i].group, imgs));
    }
    SystemMorphism phi(qx.system, qy.system, level);
    auto subs = all_subgroups(g);
    const Subgroup& h = subs[rng() % subs.size()];
    Subsystem z;
    for (Node i = 0; i < n; ++i) z.nodes.push_back(image(qy.quotients[i].map, h));

    LimitGroup lx = limit(qx.system), ly = limit(qy.system);
    Homomorphism lphi = limit_of_morphism(phi, lx, ly);
    Subgroup lhs = subsystem_limit(lx, preimage_system(phi, z));
    Subgroup rhs = preimage(lphi, subsystem_limit(ly, z));
    o.expect(lhs == rhs, "pullback commutes with the limit, trial " + std::to_string(trial));
    for (Node i = 0; i < n; ++i)
      o.expect(oracle::image_size(lx.projections[i]) == qx.system.group(i).order(),
               "projection surjective");
    o.expect(lx.group.order() == oracle::count_coherent(qx.system), "limit order");
  }
  o.note << kSystems << " systems";
}

void criterion5(Outcome& o) {
  struct Case {
    const char* a;
    const char* b;
    std::size_t mid, order;
  };
  for (const Case& k : {Case{"Z4", "Z2xZ2", 2, 8}, Case{"Z6", "S3", 3, 18},
                        Case{"D8", "Q8", 4, 32}}) {
    FiniteGroup a = group_from_name(k.a), b = group_from_name(k.b);
    WitnessCertificate c = build_witness_length2(two_step(a, k.mid), two_step(b, k.mid));
    std::string tag = std::string(k.a) + "/" + k.b;
    o.expect(c.g.order() == k.order, tag + " witness order");
    check_report(o, verify_witness(c, a, b), tag);
    const FiniteGroup* l[2] = {&a, &b};
    for (int d = 0; d < 2; ++d) {
      Homomorphism p = c.projection(d);
      o.expect(oracle::is_hom_all_pairs(p), tag + " p homomorphism");
      o.expect(oracle::image_size(p) == l[d]->order(), tag + " p surjective");
      o.expect(oracle::isomorphic_tiny(quotient(kernel(p)).group, *l[d]),
               tag + " G/ker p isomorphic to L");
    }
    o.expect(oracle::isomorphic_tiny(c.kernel(0).group(), c.kernel(1).group()),
             tag + " kernels isomorphic");
    o.note << tag << " " << c.g.order() << "  ";
  }
}

void criterion6(Outcome& o) {
  const std::vector<std::string> names{"Z8", "Z2xZ4", "Z2^3", "D8", "Q8"};
  Bounds b;
  b.isomorphism = 256;
  std::mt19937 rng(6);
  std::size_t largest = 0, pairs = 0;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      FiniteGroup l1 = group_from_name(names[i]), l2 = group_from_name(names[j]);
      std::string tag = names[i] + "/" + names[j];
      auto [x, y] = pad_series(central_series(l1), central_series(l2));
      GroupSequence s1 = series_to_sequence(l1, x), s2 = series_to_sequence(l2, y);
      auto comp = comp_membership(s1, s2);
      o.expect(comp.has_value(), tag + " in Comp");
      if (!comp) continue;
      for (std::size_t lv = 2; lv + 1 <= comp->length; ++lv)
        o.expect(comp->central[lv], tag + " trivial inner restrictions");
      WitnessCertificate c = build_good_witness(s1, s2, *comp);
      o.expect(c.g.order() <= 2048, tag + " witness order <= 2048");
      o.expect(c.kernels[0].size() <= 256, tag + " kernel order <= 256");
      check_report(o, verify_witness(c, l1, l2), tag);
      // Independent of the certified table: search for any isomorphism.
      o.expect(find_isomorphism(c.kernel(0).group(), c.kernel(1).group(), b).has_value(),
               tag + " kernel isomorphism search");
      o.expect(hom_on_pairs(c.kernel_map(), rng), tag + " kernel_iso on all pairs");
      largest = std::max(largest, c.g.order());
      ++pairs;
    }
  o.note << pairs << " pairs, largest witness " << largest;
}

void criterion7(Outcome& o) {
  WitnessCertificate c = goodwit_certificate(2, 3);
  o.expect(c.g.order() == 64, "|G| = 64");
  o.expect(c.g.is_abelian() && exponent(c.g) == 8, "G abelian of exponent 8");
  check_report(o, verify_witness(c, group_from_name("Z2^3"), cyclic(8)), "goodwit");

  // N1 = <x_1> of order 2, N2 = <y^4>.
  o.expect(c.good[0].normal.size() == 2, "|N1| = 2");
  const FiniteGroup& l2 = c.quotients[1];
  Elem y = l2.generators()[0];
  Elem y4 = l2.mul(l2.mul(y, y), l2.mul(y, y));
  o.expect(c.good[1].normal == std::vector<Elem>({0, y4}), "N2 = <y^4>");
  for (int d = 0; d < 2; ++d)
    o.expect(is_trivially_extendable(c.projection(d), c.section(d).domain).extendable,
             "independent extendability search");

  std::array<Homomorphism, 2> pi;
  for (int d = 0; d < 2; ++d) pi[d] = quotient(c.section(d).domain).map;
  WitnessCertificate w = compose_witness(c, pi);
  o.expect(isomorphism_screen(w.quotients[0], group_from_name("Z2xZ2")).passed &&
               oracle::isomorphic_tiny(w.quotients[0], group_from_name("Z2xZ2")),
           "composed L1 = Z2^2");
  o.expect(oracle::isomorphic_tiny(w.quotients[1], cyclic(4)), "composed L2 = Z4");
  check_report(o, verify_witness(w, w.quotients[0], w.quotients[1]), "composed");
  o.note << "composed witness for quotients of order " << w.quotients[0].order();
}

void criterion8(Outcome& o) {
  FiniteGroup a = group_from_name("F21xZ2"), b = group_from_name("Z7xS3");
  GroupSequence s1 = series_to_sequence(a, square_free_series(a));
  GroupSequence s2 = series_to_sequence(b, square_free_series(b));
  // 1 <= Z7 <= Z7.Z3 <= L: level kernels from the bottom quotient up.
  for (const GroupSequence* s : {&s1, &s2})
    o.expect(s->length() == 3 && s->kernel(1).order() == 2 && s->kernel(2).order() == 3 &&
                 s->kernel(3).order() == 7,
             "Z7.Z3.Z2 series");
  auto comp = comp_membership(s1, s2);
  o.expect(comp.has_value(), "in Comp_3");
  if (!comp) return;
  RecursionStep st = build_recursion_step(s1, s2, *comp);
  std::mt19937 rng(8);
  for (int d = 0; d < 2; ++d) {
    std::string side = d == 0 ? "side 1 " : "side 2 ";
    o.expect(st.g[d].group.order() == 294, side + "|G_d| = 294");
    o.expect(st.h[d].carrier.order() == 294, side + "|H_d| = 294");
    o.expect(oracle::is_bijective_table(st.eta[d]), side + "eta bijective");
    o.expect(hom_on_pairs(st.eta[d], rng), side + "eta homomorphism");
    o.expect(st.squares_commute[d], side + "squares commute");
    Subgroup k = kernel(st.pi_next[d]);
    o.expect(k.order() == 343 && is_elementary_abelian(k.group()), side + "ker = Z7^3");
  }
  o.note << "|G_d| = |H_d| = " << st.g[0].group.order() << ", ker pi_next of order "
         << kernel(st.pi_next[0]).order();
}

void stretch_pair(Outcome& o, const char* x, const char* y) {
  FiniteGroup a = group_from_name(x), b = group_from_name(y);
  auto t0 = std::chrono::steady_clock::now();
  StretchCertificate c = witness_square_free_stretch(a, b);
  check_report(o, verify_stretch(c, a, b, {kStretchSamples, 9}), std::string(x) + "/" + y);
  o.note << x << "/" << y << " |G| = " << c.g.order() << " in " << std::fixed
         << std::setprecision(2) << seconds_since(t0) << " s  ";
}

void criterion10(Outcome& o) {
  // Enumerated certificate: each tamper trips its own check.
  FiniteGroup d8 = dihedral(8), q8 = dicyclic(8);
  WitnessCertificate c = build_witness_length2(two_step(d8, 4), two_step(q8, 4));
  o.expect(verify_witness(c, d8, q8).passed(), "untampered passes");
  auto t = c;
  std::swap(t.kernel_iso[1], t.kernel_iso[2]);
  o.expect(!verify_witness(t, d8, q8).passed(), "swapped kernel_iso");
  auto u = c;
  for (Elem g = 0; g < u.p[0].size(); ++g)
    if (u.p[0][g] != 0) {
      u.p[0][g] = 0;
      break;
    }
  o.expect(!verify_witness(u, d8, q8).passed(), "edited p1");
  auto v = c;
  v.good[1].section[1] = 0;
  o.expect(!verify_witness(v, d8, q8).passed(), "edited section");
  o.expect(!verify_witness(c, q8, d8).passed(), "swapped quotients");

  // Through the file format.
  Json j = certificate_to_json(c);
  o.expect(verify_witness(certificate_from_json(j), d8, q8).passed(), "JSON round trip");
  j["kernel_iso"][1].swap(j["kernel_iso"][2]);
  o.expect(!verify_witness(certificate_from_json(j), d8, q8).passed(), "tampered file");

  // Stretch certificate.
  FiniteGroup z30 = cyclic(30), z5s3 = group_from_name("Z5xS3");
  StretchCertificate s = witness_square_free_stretch(z30, z5s3);
  std::swap(s.good_section[0][1], s.good_section[0][2]);
  o.expect(!verify_stretch(s, z30, z5s3, {500, 1}).passed(), "tampered stretch section");

  // Z4 -> Z2 is not trivially extendable at N = Z2.
  FiniteGroup z4 = cyclic(4), z2 = cyclic(2);
  auto pi = Homomorphism::from_images(z4, z2, std::vector<Elem>{z2.generators()[0]});
  auto e = is_trivially_extendable(pi, Subgroup::whole(z2));
  o.expect(!e.extendable && e.failing && e.failing->order() == 2, "Z4 -> Z2 refuted");

  // Non-square-free input: C++ and C entry points.
  bool threw = false;
  try {
    witness_square_free(z4, group_from_name("Z2xZ2"));
  } catch (const HypothesisRefuted&) {
    threw = true;
  }
  o.expect(threw, "witness_square_free refuses order 4");
  cw_group *g1 = nullptr, *g2 = nullptr;
  cw_certificate* cert = nullptr;
  cw_group_new("Z4", nullptr, &g1);
  cw_group_new("Z2xZ2", nullptr, &g2);
  cw_status st = cw_witness_build(g1, g2, CW_SERIES_SQUARE_FREE, CW_MODE_ENUMERATED, nullptr,
                                  &cert);
  o.expect(st == CW_REFUTED && cert == nullptr, "C API returns refuted");
  cw_group_free(g1);
  cw_group_free(g2);
  o.note << "status " << cw_status_name(st);
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "hybrid example HW(F21, S3, theta)", kHybridSeconds, criterion1);
  ok &= run(2, "BW as a limit, example and random hybrids", 0, criterion2);
  ok &= run(3, "standard embeddings and conjugators", kEmbeddingSeconds, criterion3);
  ok &= run(4, "inverse limits: pullbacks and projections", 0, criterion4);
  ok &= run(5, "length-2 witnesses", kLengthTwoSeconds, criterion5);
  ok &= run(6, "order-8 pairs end to end", kNilpotentSeconds, criterion6);
  ok &= run(7, "goodwit certificate and composition", kGoodwitSeconds, criterion7);
  ok &= run(8, "recursion step at order 42", kStepSeconds, criterion8);
  ok &= run(10, "negative controls", 0, criterion10);
  // Not part of the pass condition.
  run(9, "stretch witnesses (reported separately)", 0, [](Outcome& o) {
    stretch_pair(o, "Z30", "Z5xS3");
    stretch_pair(o, "F21xZ2", "Z7xS3");
  });
  std::cout << (ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << std::endl;
  return ok ? 0 : 1;
}
