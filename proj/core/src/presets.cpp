// Copyright 2026 The onebit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onebit/behavior.hpp"
#include "onebit/error.hpp"
#include "onebit/lhv.hpp"

namespace onebit {
namespace detail {
// Defined in the generated preset_data.cpp: (file stem, file contents).
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_presets();
}  // namespace detail

namespace {

constexpr const char* kPartyKeys[] = {"alice1", "alice2", "bob1", "bob2"};

PartyCoefficients* party_slot(ProtocolCoefficients& c, int i) {
  PartyCoefficients* slots[] = {&c.alice1, &c.alice2, &c.bob1, &c.bob2};
  return slots[i];
}

const PartyCoefficients& party_slot(const ProtocolCoefficients& c, int i) {
  const PartyCoefficients* slots[] = {&c.alice1, &c.alice2, &c.bob1, &c.bob2};
  return *slots[i];
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Name <-> file stem: "5pi/32" <-> "theta_5pi_32".
std::string stem_for(std::string_view name) {
  std::string s = "theta_";
  for (char ch : name) s += (ch == '/') ? '_' : ch;
  return s;
}

}  // namespace

nlohmann::json ProtocolCoefficients::to_json() const {
  nlohmann::json j;
  j["theta"] = theta;
  for (int i = 0; i < 4; ++i) {
    const PartyCoefficients& p = party_slot(*this, i);
    j[kPartyKeys[i]] = {{"u", p.u}, {"v", p.v}, {"w", p.w}, {"x", p.x}, {"y", p.y}};
  }
  j["comm"] = {{"u", comm_u}, {"v", comm_v}};
  j["checksum"] = preset_checksum(*this);
  return j;
}

std::string preset_checksum(const ProtocolCoefficients& c) {
  // Canonical text: every value at %.17g in a fixed order.
  std::string text = "theta=" + fmt17(c.theta);
  for (int i = 0; i < 4; ++i) {
    const PartyCoefficients& p = party_slot(c, i);
    text += std::string(";") + kPartyKeys[i] + "=" + fmt17(p.u) + "," +
            fmt17(p.v) + "," + fmt17(p.w) + "," + fmt17(p.x) + "," + fmt17(p.y);
  }
  text += ";comm=" + fmt17(c.comm_u) + "," + fmt17(c.comm_v);

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ProtocolCoefficients ProtocolCoefficients::from_json(const nlohmann::json& j) {
  ProtocolCoefficients c;
  try {
    c.theta = j.at("theta").get<double>();
    for (int i = 0; i < 4; ++i) {
      const auto& p = j.at(kPartyKeys[i]);
      PartyCoefficients* slot = party_slot(c, i);
      slot->u = p.at("u").get<double>();
      slot->v = p.at("v").get<double>();
      slot->w = p.at("w").get<double>();
      slot->x = p.at("x").get<double>();
      slot->y = p.at("y").get<double>();
    }
    c.comm_u = j.at("comm").at("u").get<double>();
    c.comm_v = j.at("comm").at("v").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed coefficient document: ") +
                          e.what());
  }
  if (j.contains("checksum")) {
    const std::string expected = j.at("checksum").get<std::string>();
    const std::string actual = preset_checksum(c);
    if (expected != actual) {
      throw InvalidArgument("coefficient checksum mismatch: file says " +
                            expected + ", values hash to " + actual);
    }
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"pi/4", "7pi/32", "3pi/16", "5pi/32", "pi/8"};
}

ProtocolCoefficients builtin_preset(std::string_view name) {
  const std::string stem = stem_for(name);
  for (const auto& [file_stem, content] : detail::embedded_presets()) {
    if (file_stem == stem) {
      return ProtocolCoefficients::from_json(nlohmann::json::parse(content));
    }
  }
  throw InvalidArgument("no shipped coefficient preset named '" +
                        std::string(name) + "'");
}

ProtocolCoefficients load_coefficients(const std::string& name_or_path) {
  for (const auto& n : preset_names()) {
    if (n == name_or_path) return builtin_preset(n);
  }
  return ProtocolCoefficients::from_json(read_json_file(name_or_path));
}

}  // namespace onebit
