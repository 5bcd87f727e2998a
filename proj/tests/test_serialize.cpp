// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "cw/construct.hpp"
#include "cw/cwit.h"
#include "cw/serialize.hpp"
#include "cw/structure.hpp"

using namespace cw;

TEST(Serialize, GroupDescriptors) {
  FiniteGroup d8 = dihedral(8);
  FiniteGroup back = group_from_json(group_to_json(d8));
  EXPECT_EQ(back.order(), 8u);
  // Canonical indices survive the round trip.
  for (Elem x = 0; x < 8; ++x) EXPECT_EQ(back.perm_copy(x), d8.perm_copy(x));

  EXPECT_EQ(group_from_json(Json("Q8")).order(), 8u);
  EXPECT_EQ(group_from_json(Json::parse(R"({"kind": "frobenius", "params": [7, 3]})")).order(),
            21u);
  EXPECT_EQ(group_from_json(Json::parse(
                                R"({"kind": "direct_product", "params": ["Z2", {"name": "S3"}]})"))
                .order(),
            12u);
  EXPECT_THROW(group_from_json(Json::parse(R"({"name": "S3", "order": 7})")), InvalidArgument);
  EXPECT_THROW(group_from_json(Json::parse(R"({"degree": 3, "generators": [[0, 0, 1]]})")),
               InvalidArgument);
  EXPECT_THROW(group_from_json(Json::parse(R"({"kind": "torus"})")), InvalidArgument);
  EXPECT_THROW(group_from_json(Json(3)), InvalidArgument);
}

TEST(Serialize, SystemsAndPosets) {
  Json j = Json::parse(R"({
    "poset": {"nodes": ["base", "a", "b"], "leq": [["base", "a"], ["base", "b"]]},
    "groups": ["Z2", "Z4", "Z4"],
    "transitions": [{"lower": 0, "upper": 1, "images": [[1, 0]]},
                    {"lower": 0, "upper": 2, "images": [[1, 0]]}]})");
  InverseSystem x = system_from_json(j);
  EXPECT_EQ(limit(x).group.order(), 8u);
  Poset p = poset_from_json(poset_to_json(x.poset()));
  EXPECT_TRUE(p.less(0, 2));
  EXPECT_FALSE(p.less(1, 2));

  j["transitions"][0]["images"] = Json::parse("[[0, 1]]");
  // Z4 -> Z2 sending the generator to 1 is a homomorphism but not surjective.
  EXPECT_FALSE(system_from_json(j).is_surjective());
}

TEST(Serialize, CertificateRoundTripVerifies) {
  FiniteGroup z6 = cyclic(6), s3 = symmetric(3);
  WitnessCertificate c = witness_square_free(z6, s3);
  std::string text = certificate_to_json(c).dump();
  WitnessCertificate back = certificate_from_json(Json::parse(text));
  EXPECT_EQ(back.p, c.p);
  EXPECT_EQ(back.kernel_iso, c.kernel_iso);
  EXPECT_EQ(back.provenance.kind, c.provenance.kind);
  EXPECT_TRUE(verify_witness(back, z6, s3).passed());
  // Identical inputs give byte-identical files.
  EXPECT_EQ(certificate_to_json(witness_square_free(z6, s3)).dump(), text);

  Json j = Json::parse(text);
  j["mode"] = "stretch";
  EXPECT_THROW(certificate_from_json(j), InvalidArgument);
}

TEST(CApi, StatusesAndOwnership) {
  cw_group* g = nullptr;
  EXPECT_EQ(cw_group_new("Z2xZ4", nullptr, &g), CW_OK);
  EXPECT_EQ(cw_group_order(g), 8u);
  char* s = nullptr;
  ASSERT_EQ(cw_group_report(g, nullptr, &s), CW_OK);
  EXPECT_NE(std::string(s).find("\"abelian\": true"), std::string::npos);
  cw_string_free(s);

  cw_group* bad = nullptr;
  EXPECT_EQ(cw_group_new("nonsense", nullptr, &bad), CW_MALFORMED);
  EXPECT_EQ(bad, nullptr);
  EXPECT_NE(std::string(cw_last_error()).size(), 0u);

  cw_bounds tiny;
  cw_bounds_default(&tiny);
  tiny.enumeration = 100;
  cw_group* q8 = nullptr;
  ASSERT_EQ(cw_group_new("Q8", nullptr, &q8), CW_OK);
  cw_certificate* c = nullptr;
  EXPECT_EQ(cw_witness_build(g, q8, CW_SERIES_CENTRAL, CW_MODE_ENUMERATED, &tiny, &c),
            CW_UNDECIDED);
  ASSERT_EQ(cw_witness_build(g, q8, CW_SERIES_CENTRAL, CW_MODE_ENUMERATED, nullptr, &c), CW_OK);
  EXPECT_EQ(cw_certificate_order(c), 2048u);
  cw_report* r = nullptr;
  ASSERT_EQ(cw_certificate_verify(c, g, q8, nullptr, 0, 0, &r), CW_OK);
  EXPECT_EQ(cw_report_passed(r), 1);
  const char* name = nullptr;
  int passed = 0;
  EXPECT_EQ(cw_report_check(r, 0, &name, &passed, nullptr), CW_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_EQ(cw_report_check(r, cw_report_size(r), &name, &passed, nullptr), CW_MALFORMED);
  cw_report_free(r);
  cw_certificate_free(c);
  cw_group_free(q8);
  cw_group_free(g);
}
