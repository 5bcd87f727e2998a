// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// cwit: batch front end over libcwit. Exit codes follow cw_status, and a
// failed verification or Comp check exits 1.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "cw/cwit.h"

namespace {

struct Fail {
  cw_status status;
};

void check(cw_status s) {
  if (s != CW_OK) throw Fail{s};
}

template <class T, void (*F)(T*)>
struct Deleter {
  void operator()(T* p) const { F(p); }
};
using Group = std::unique_ptr<cw_group, Deleter<cw_group, cw_group_free>>;
using Cert = std::unique_ptr<cw_certificate, Deleter<cw_certificate, cw_certificate_free>>;
using Report = std::unique_ptr<cw_report, Deleter<cw_report, cw_report_free>>;

std::string take(char* s) {
  std::string out(s);
  cw_string_free(s);
  return out;
}

// Inline JSON, a group name, or @path for a file.
std::string read_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) {
    std::cerr << "cwit: cannot read " << arg.substr(1) << "\n";
    throw Fail{CW_MALFORMED};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Group group(const std::string& desc, const cw_bounds& b) {
  cw_group* g = nullptr;
  check(cw_group_new(read_arg(desc).c_str(), &b, &g));
  return Group(g);
}

void write(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cwit: cannot write " << path << "\n";
    throw Fail{CW_MALFORMED};
  }
  out << text << "\n";
}

const std::map<std::string, cw_series> kSeries{{"auto", CW_SERIES_AUTO},
                                               {"central", CW_SERIES_CENTRAL},
                                               {"auto-central", CW_SERIES_CENTRAL},
                                               {"square-free", CW_SERIES_SQUARE_FREE}};
const std::map<std::string, cw_mode> kModes{{"enumerated", CW_MODE_ENUMERATED},
                                            {"stretch", CW_MODE_STRETCH}};

int print_report(cw_report* r, const std::string& out) {
  char* s = nullptr;
  check(cw_report_to_json(r, &s));
  write(take(s), out);
  return cw_report_passed(r) ? 0 : CW_REFUTED;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify compatibility witnesses for finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", cw_version());

  cw_bounds b;
  cw_bounds_default(&b);
  std::string mode_name = "enumerated", out_path, series_name = "auto";
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  app.add_option("--bound-enum", b.enumeration, "Largest group enumerated")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound-iso", b.isomorphism, "Largest isomorphism search")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound-aut", b.automorphism, "Largest automorphism enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the JSON result here instead of stdout");
  app.add_option("--seed", seed, "Seed for sampled checks");

  std::string g_desc, h_desc, image_desc, l1_desc, l2_desc, system_desc, cert_path;
  std::size_t k = 1;

  auto* grp = app.add_subcommand("group", "Describe a group");
  grp->add_option("group", g_desc, "Name, JSON descriptor or @file")->required();

  auto* lim = app.add_subcommand("limit", "Inverse limit of a system");
  lim->add_option("system", system_desc, "JSON system or @file")->required();

  auto* wr = app.add_subcommand("wreath", "Wreath product G wr H on cosets");
  wr->add_option("--G", g_desc)->required();
  wr->add_option("--H", h_desc)->required();
  wr->add_option("--k", k, "Order of the point stabilizer in H")->check(CLI::PositiveNumber);

  auto* hy = app.add_subcommand("hybrid", "Hybrid wreath product HW(G, H, theta)");
  hy->add_option("--G", g_desc)->required();
  hy->add_option("--H", h_desc)->required();
  hy->add_option("--theta-image", image_desc, "Isomorphism type of theta(G)")->required();

  auto* ser = app.add_subcommand("series", "Normal series used by the witness construction");
  ser->require_subcommand(1);
  auto* ser_c = ser->add_subcommand("central", "Central series");
  ser_c->add_option("group", g_desc)->required();
  auto* ser_s = ser->add_subcommand("square-free", "Sylow series of a square-free group");
  ser_s->add_option("group", g_desc)->required();

  auto add_pair = [&](CLI::App* c) {
    c->add_option("--L1", l1_desc)->required();
    c->add_option("--L2", l2_desc)->required();
    c->add_option("--series", series_name)->transform(CLI::IsMember(kSeries));
  };

  auto* comp = app.add_subcommand("comp", "Comp condition");
  comp->require_subcommand(1);
  auto* comp_check = comp->add_subcommand("check", "Decide membership in Comp for two series");
  add_pair(comp_check);

  auto* wit = app.add_subcommand("witness", "Witness certificates");
  wit->require_subcommand(1);
  auto* build = wit->add_subcommand("build", "Build a good witness");
  add_pair(build);
  build->add_option("--mode", mode_name)->transform(CLI::IsMember(kModes));
  bool verify_after = false;
  build->add_flag("--verify", verify_after, "Verify the certificate and print the report");
  auto* verify = wit->add_subcommand("verify", "Re-verify an enumerated certificate file");
  verify->add_option("--cert", cert_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--L1", l1_desc)->required();
  verify->add_option("--L2", l2_desc)->required();
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);

  auto* ex = app.add_subcommand("examples", "Reproduce the named examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : CW_MALFORMED;
  }

  try {
    char* s = nullptr;
    if (*grp) {
      check(cw_group_report(group(g_desc, b).get(), &b, &s));
      write(take(s), out_path);
    } else if (*lim) {
      check(cw_limit_report(read_arg(system_desc).c_str(), &b, &s));
      write(take(s), out_path);
    } else if (*wr) {
      check(cw_wreath_report(group(g_desc, b).get(), group(h_desc, b).get(), k, &b, &s));
      write(take(s), out_path);
    } else if (*hy) {
      check(cw_hybrid_report(group(g_desc, b).get(), group(h_desc, b).get(),
                             group(image_desc, b).get(), &b, &s));
      write(take(s), out_path);
    } else if (*ser) {
      cw_series kind = *ser_c ? CW_SERIES_CENTRAL : CW_SERIES_SQUARE_FREE;
      check(cw_series_report(group(g_desc, b).get(), kind, &s));
      write(take(s), out_path);
    } else if (*comp) {
      check(cw_comp_check(group(l1_desc, b).get(), group(l2_desc, b).get(),
                          kSeries.at(series_name), &b, &s));
      std::string text = take(s);
      write(text, out_path);
      return text.find("\"member\": true") != std::string::npos ? 0 : CW_REFUTED;
    } else if (*build) {
      Group l1 = group(l1_desc, b), l2 = group(l2_desc, b);
      cw_certificate* c = nullptr;
      check(cw_witness_build(l1.get(), l2.get(), kSeries.at(series_name), kModes.at(mode_name),
                             &b, &c));
      Cert cert(c);
      check(cw_certificate_to_json(cert.get(), &s));
      write(take(s), out_path);
      if (verify_after) {
        cw_report* r = nullptr;
        check(cw_certificate_verify(cert.get(), l1.get(), l2.get(), &b, samples, seed, &r));
        return print_report(Report(r).get(), "");
      }
    } else if (*verify) {
      cw_certificate* c = nullptr;
      check(cw_certificate_from_json(read_arg("@" + cert_path).c_str(), &b, &c));
      Cert cert(c);
      cw_report* r = nullptr;
      check(cw_certificate_verify(cert.get(), group(l1_desc, b).get(), group(l2_desc, b).get(),
                                  &b, samples, seed, &r));
      return print_report(Report(r).get(), out_path);
    } else if (*ex) {
      check(cw_examples_run(&b, &s));
      std::string text = take(s);
      write(text, out_path);
      return text.find("\"passed\": false") == std::string::npos ? 0 : CW_REFUTED;
    }
  } catch (const Fail& f) {
    std::cerr << "cwit: " << cw_status_name(f.status) << ": " << cw_last_error() << "\n";
    return f.status;
  }
  return 0;
}
