// Copyright 2026 The crzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "crzz/device_card.hpp"

#ifndef CRZZ_SOURCE_DIR
#define CRZZ_SOURCE_DIR "."
#endif

namespace crzz {
namespace {

Json card_json(const char* name) { return to_json(*bundled_card(name)); }

ErrorKind kind_of(const Json& j) {
  try {
    card_from_json(j);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "card was accepted";
  return ErrorKind::Divergence;
}

TEST(Card, RoundTripIsByteIdentical) {
  for (const std::string& name : bundled_card_names()) {
    const std::string a = card_to_string(*bundled_card(name));
    const std::string b = card_to_string(card_from_string(a));
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Card, FrozenHashes) {
  EXPECT_EQ(hex64(card_hash(paper_device_card())), "6318c8555cb9b6a3");
  EXPECT_EQ(hex64(card_hash(ideal_zz_free_card())), "e966ef424241d522");
  EXPECT_EQ(hex64(card_hash(transmon_transmon_card())), "0215cf91a4b5adba");
}

TEST(Card, ShippedFilesMatchBundled) {
  for (const std::string& name : bundled_card_names()) {
    const DeviceCard c = load_card(std::string(CRZZ_SOURCE_DIR) + "/cards/" + name + ".json");
    EXPECT_EQ(card_hash(c), card_hash(*bundled_card(name))) << name;
  }
}

TEST(Card, UnknownKeysRejected) {
  Json j = card_json("paper-device");
  j["coherence"]["T3_us"] = 1.0;
  try {
    card_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("T3_us"), std::string::npos);
  }
  Json top = card_json("paper-device");
  top["colour"] = "blue";
  EXPECT_EQ(kind_of(top), ErrorKind::InvalidInput);
}

TEST(Card, TypeErrorsRejected) {
  Json j = card_json("paper-device");
  j["levels"] = "five";
  EXPECT_EQ(kind_of(j), ErrorKind::InvalidInput);
  EXPECT_THROW(card_from_string("{ not json"), Error);
}

TEST(Card, CouplingNeedsExactlyOneSource) {
  Json j = card_json("paper-device");
  j["coupling"]["J_uniform_MHz"] = 5.0;
  EXPECT_EQ(kind_of(j), ErrorKind::InvalidInput);
  Json k = card_json("paper-device");
  k["coupling"].erase("network");
  k["coupling"].erase("mode_frequencies");
  EXPECT_EQ(kind_of(k), ErrorKind::InvalidInput);
}

TEST(Card, PhysicalValidation) {
  Json j = card_json("paper-device");
  j["coherence"]["T2_q2_us"] = 100.0;
  EXPECT_EQ(kind_of(j), ErrorKind::UnphysicalCard);
  Json k = card_json("paper-device");
  k["csfq"]["alpha"] = 0.6;
  EXPECT_EQ(kind_of(k), ErrorKind::Regime);
  Json l = card_json("paper-device");
  l["coupling"]["network"]["C_ab_fF"] = -1.0;
  EXPECT_TRUE(is_validation_error(kind_of(l)));
}

TEST(Card, UnitsAreConverted) {
  const DeviceCard c = card_from_json(card_json("transmon-transmon"));
  EXPECT_DOUBLE_EQ(*c.model.J_uniform, 3.5e-3);
  EXPECT_DOUBLE_EQ(*c.model.zeta0_override, 0.0);
  const DeviceCard p = card_from_json(card_json("paper-device"));
  ASSERT_EQ(p.model.J_overrides.size(), 3u);
  EXPECT_DOUBLE_EQ(p.model.J_overrides[2].J, 8.1e-3);
  EXPECT_NEAR(p.model.couplings.g_rm, -0.1111, 5e-4);
}

TEST(Card, ResolveAppliesCalibrations) {
  const DeviceModel m = resolve(paper_device_card());
  EXPECT_FALSE(m.csfq_fit_bare_GHz);
  EXPECT_NEAR(m.csfq.E_J, 121.134, 0.01);
  EXPECT_NEAR(m.transmon.E_J, 13.6821, 1e-3);
  const DeviceModel z = resolve(ideal_zz_free_card());
  EXPECT_NEAR(z.csfq.E_J, 123.854, 0.01);
  EXPECT_LT(std::abs(flux_point(z, 0.5).zeta), 1e-9);
}

TEST(Card, LookupByNameOrPath) {
  EXPECT_EQ(card_by_name_or_path("ideal-zz-free").model.label, "ideal-zz-free");
  EXPECT_THROW(card_by_name_or_path("/nonexistent/card.json"), Error);
}

}  // namespace
}  // namespace crzz
