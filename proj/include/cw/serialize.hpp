// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// JSON descriptors and certificate files.
//
// Groups serialize as {label, degree, generators}. Element indices are the
// canonical lexicographic positions, so tables written against a group stay
// valid after it is rebuilt from its generators.

#ifndef CW_SERIALIZE_HPP_
#define CW_SERIALIZE_HPP_

#include <json.hpp>

#include "cw/group.hpp"
#include "cw/limits.hpp"
#include "cw/poset.hpp"
#include "cw/stretch.hpp"
#include "cw/witness.hpp"

namespace cw {

using Json = nlohmann::ordered_json;

Json group_to_json(const FiniteGroup& g);
// Accepts a name string, {"name": ...}, {"kind": ..., "params": [...]} or
// {"degree": n, "generators": [[...], ...]}. Throws InvalidArgument.
FiniteGroup group_from_json(const Json& j, const Bounds& bounds = {});

// {"images": [perm per source generator]}.
Json hom_to_json(const Homomorphism& f);
Homomorphism hom_from_json(const Json& j, const FiniteGroup& src, const FiniteGroup& dst);

Json poset_to_json(const Poset& p);
// {"nodes": n | [names], "leq": [[i, j], ...]}.
Poset poset_from_json(const Json& j);

// {"poset": ..., "groups": [...], "transitions": [{"lower", "upper", "images"}]}.
InverseSystem system_from_json(const Json& j, const Bounds& bounds = {});

Json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);
Json report_to_json(const VerificationReport& r);

Json certificate_to_json(const WitnessCertificate& c);
WitnessCertificate certificate_from_json(const Json& j, const Bounds& bounds = {});
// Generators, generator images and kernel-map images only.
Json stretch_to_json(const StretchCertificate& c);

}  // namespace cw

#endif  // CW_SERIALIZE_HPP_
